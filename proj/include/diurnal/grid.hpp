#pragma once

#include <cstdint>
#include <vector>

#include "diurnal/error.hpp"

namespace diurnal {

/// Dense rows x cols matrix of real values, row-major. Units depend on
/// context: brightness counts, temperature difference, or kilometers.
struct Grid {
    int rows = 0;
    int cols = 0;
    double km_per_pixel = 1.0;
    std::vector<double> values;

    Grid() = default;
    Grid(int rows_, int cols_, double fill = 0.0, double km_per_pixel_ = 1.0)
        : rows(rows_), cols(cols_), km_per_pixel(km_per_pixel_),
          values(static_cast<size_t>(rows_) * cols_, fill) {}

    double& at(int i, int j) { return values[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }

    bool same_shape(const Grid& other) const {
        return rows == other.rows && cols == other.cols;
    }
    bool empty() const { return values.empty(); }
};

/// 0/1 mask with the same geometry conventions as Grid.
struct BinaryGrid {
    int rows = 0;
    int cols = 0;
    double km_per_pixel = 1.0;
    std::vector<uint8_t> bits;

    BinaryGrid() = default;
    BinaryGrid(int rows_, int cols_, uint8_t fill = 0, double km_per_pixel_ = 1.0)
        : rows(rows_), cols(cols_), km_per_pixel(km_per_pixel_),
          bits(static_cast<size_t>(rows_) * cols_, fill) {}

    uint8_t& at(int i, int j) { return bits[static_cast<size_t>(i) * cols + j]; }
    uint8_t at(int i, int j) const { return bits[static_cast<size_t>(i) * cols + j]; }

    bool empty() const { return bits.empty(); }
};

/// Returns the mask with every bit flipped.
BinaryGrid complement(const BinaryGrid& b);

struct Frame {
    int64_t t_minutes = 0;  // minutes since Unix epoch, UTC
    Grid grid;
};

/// Ordered list of frames with strictly increasing timestamps and identical
/// grid geometry.
struct FrameStack {
    std::vector<Frame> frames;
    double km_per_pixel = 1.0;

    void validate() const;  // throws DimensionMismatch / BadTimestamp
    bool empty() const { return frames.empty(); }
    size_t size() const { return frames.size(); }
};

}  // namespace diurnal
