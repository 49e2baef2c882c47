#include "diurnal/morphology.hpp"

#include <algorithm>
#include <string>

namespace diurnal {

namespace {

void check_kernel(const BinaryGrid& b, const StructuringElement& se) {
    if (se.k_rows < 1 || se.k_cols < 1 || se.k_rows > b.rows || se.k_cols > b.cols)
        raise(ErrorCode::KernelTooLarge, std::to_string(se.k_rows) + "x" +
                                             std::to_string(se.k_cols) + " kernel on " +
                                             std::to_string(b.rows) + "x" +
                                             std::to_string(b.cols) + " grid");
}

}  // namespace

BinaryGrid threshold(const Grid& diff, double mu) {
    BinaryGrid out(diff.rows, diff.cols, 0, diff.km_per_pixel);
    for (size_t i = 0; i < diff.values.size(); ++i) out.bits[i] = diff.values[i] < mu ? 1 : 0;
    return out;
}

BinaryGrid erode(const BinaryGrid& b, const StructuringElement& se) {
    check_kernel(b, se);
    const int ar = se.anchor_row(), ac = se.anchor_col();
    BinaryGrid out(b.rows, b.cols, 0, b.km_per_pixel);
    for (int i = 0; i < b.rows; ++i) {
        const int i0 = i - ar, i1 = i - ar + se.k_rows - 1;
        for (int j = 0; j < b.cols; ++j) {
            const int j0 = j - ac, j1 = j - ac + se.k_cols - 1;
            if (i0 < 0 || j0 < 0 || i1 >= b.rows || j1 >= b.cols) continue;  // off-image cell = 0
            uint8_t all = 1;
            for (int u = i0; u <= i1 && all; ++u)
                for (int v = j0; v <= j1; ++v)
                    if (!b.at(u, v)) {
                        all = 0;
                        break;
                    }
            out.at(i, j) = all;
        }
    }
    return out;
}

BinaryGrid dilate(const BinaryGrid& b, const StructuringElement& se) {
    check_kernel(b, se);
    const int ar = se.anchor_row(), ac = se.anchor_col();
    BinaryGrid out(b.rows, b.cols, 0, b.km_per_pixel);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            if (!b.at(i, j)) continue;
            // stamp the kernel, clipped to the image
            const int i0 = std::max(0, i - ar), i1 = std::min(b.rows - 1, i - ar + se.k_rows - 1);
            const int j0 = std::max(0, j - ac), j1 = std::min(b.cols - 1, j - ac + se.k_cols - 1);
            for (int u = i0; u <= i1; ++u)
                for (int v = j0; v <= j1; ++v) out.at(u, v) = 1;
        }
    return out;
}

BinaryGrid opening(const BinaryGrid& b, const StructuringElement& se) {
    return dilate(erode(b, se), se);
}

Grid distance_transform(const BinaryGrid& b) {
    const int rows = b.rows, cols = b.cols;
    const int inf = rows + cols + 1;
    std::vector<int> dist(b.bits.size());
    bool any_zero = false;
    for (size_t i = 0; i < b.bits.size(); ++i) {
        dist[i] = b.bits[i] ? inf : 0;
        if (!b.bits[i]) any_zero = true;
    }
    if (!any_zero) raise(ErrorCode::AllForeground, "no 0 bit for the distance transform");

    // Two-pass chamfer over the 8-neighborhood with unit weights computes the
    // exact chessboard distance.
    auto idx = [cols](int i, int j) { return static_cast<size_t>(i) * cols + j; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int d = dist[idx(i, j)];
            if (i > 0) {
                d = std::min(d, dist[idx(i - 1, j)] + 1);
                if (j > 0) d = std::min(d, dist[idx(i - 1, j - 1)] + 1);
                if (j + 1 < cols) d = std::min(d, dist[idx(i - 1, j + 1)] + 1);
            }
            if (j > 0) d = std::min(d, dist[idx(i, j - 1)] + 1);
            dist[idx(i, j)] = d;
        }
    for (int i = rows - 1; i >= 0; --i)
        for (int j = cols - 1; j >= 0; --j) {
            int d = dist[idx(i, j)];
            if (i + 1 < rows) {
                d = std::min(d, dist[idx(i + 1, j)] + 1);
                if (j > 0) d = std::min(d, dist[idx(i + 1, j - 1)] + 1);
                if (j + 1 < cols) d = std::min(d, dist[idx(i + 1, j + 1)] + 1);
            }
            if (j + 1 < cols) d = std::min(d, dist[idx(i, j + 1)] + 1);
            dist[idx(i, j)] = d;
        }

    Grid out(rows, cols, 0.0, b.km_per_pixel);
    for (size_t i = 0; i < dist.size(); ++i) out.values[i] = dist[i] * b.km_per_pixel;
    return out;
}

}  // namespace diurnal
