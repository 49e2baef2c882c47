#include "diurnal/cubical.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diurnal {

CubicalFiltration::CubicalFiltration(const Grid& grid) : rows_(grid.rows), cols_(grid.cols) {
    if (grid.empty()) raise(ErrorCode::BadParams, "empty grid for filtration");
    const int R = lattice_rows(), C = lattice_cols();
    values_.assign(static_cast<size_t>(R) * C, std::numeric_limits<double>::infinity());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            values_[static_cast<size_t>(2 * i + 1) * C + (2 * j + 1)] = grid.at(i, j);
    // Lower cells take the min over the squares they bound: the odd
    // coordinates within distance 1 per axis.
    for (int a = 0; a < R; ++a) {
        for (int b = 0; b < C; ++b) {
            if ((a & 1) && (b & 1)) continue;
            double m = std::numeric_limits<double>::infinity();
            const int a_lo = (a & 1) ? a : a - 1, a_hi = (a & 1) ? a : a + 1;
            const int b_lo = (b & 1) ? b : b - 1, b_hi = (b & 1) ? b : b + 1;
            for (int aa = a_lo; aa <= a_hi; aa += 2) {
                if (aa < 0 || aa >= R) continue;
                for (int bb = b_lo; bb <= b_hi; bb += 2) {
                    if (bb < 0 || bb >= C) continue;
                    m = std::min(m, values_[static_cast<size_t>(aa) * C + bb]);
                }
            }
            values_[static_cast<size_t>(a) * C + b] = m;
        }
    }
}

CubicalFiltration build_filtration(const Grid& grid) { return CubicalFiltration(grid); }

namespace {

using index_t = int32_t;

struct CellRef {
    double value;
    index_t lattice_index;
};

bool cell_less(const CellRef& x, const CellRef& y) {
    return x.value < y.value || (x.value == y.value && x.lattice_index < y.lattice_index);
}

// Collects all cells of one dimension, sorted by (value, row-major lattice
// position). Within the global filtration order (value, dim, position) this
// is exactly the order restricted to that dimension.
std::vector<CellRef> cells_of_dim(const CubicalFiltration& f, int dim) {
    std::vector<CellRef> cells;
    const int R = f.lattice_rows(), C = f.lattice_cols();
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < C; ++b)
            if (CubicalFiltration::cell_dim(a, b) == dim)
                cells.push_back({f.value(a, b), static_cast<index_t>(a * C + b)});
    std::sort(cells.begin(), cells.end(), cell_less);
    return cells;
}

// Z2 column reduction of the boundary matrix from (p+1)-cells to p-cells in
// filtration order. Appends one finite pair per nonzero reduced column.
// Returns the number of columns that reduced to zero.
size_t reduce_boundary(const CubicalFiltration& f, int p, std::vector<PersistencePair>* out) {
    const int C = f.lattice_cols();
    const std::vector<CellRef> faces = cells_of_dim(f, p);
    const std::vector<CellRef> cofaces = cells_of_dim(f, p + 1);

    // face lattice index -> filtration rank
    std::vector<index_t> face_rank(static_cast<size_t>(f.lattice_rows()) * C, -1);
    for (size_t r = 0; r < faces.size(); ++r) face_rank[faces[r].lattice_index] = static_cast<index_t>(r);

    std::vector<std::vector<index_t>> reduced(cofaces.size());
    std::vector<index_t> pivot_owner(faces.size(), -1);
    std::vector<index_t> column, merged;
    size_t zero_columns = 0;

    for (size_t j = 0; j < cofaces.size(); ++j) {
        const index_t li = cofaces[j].lattice_index;
        const int a = li / C, b = li % C;
        column.clear();
        if (CubicalFiltration::cell_dim(a, b) == 2) {
            const index_t fs[4] = {static_cast<index_t>(li - C), static_cast<index_t>(li + C),
                                   static_cast<index_t>(li - 1), static_cast<index_t>(li + 1)};
            for (index_t fi : fs) column.push_back(face_rank[fi]);
        } else {
            // edge: two endpoint vertices
            const index_t step = (a & 1) ? C : 1;
            column.push_back(face_rank[li - step]);
            column.push_back(face_rank[li + step]);
        }
        std::sort(column.begin(), column.end());

        while (!column.empty()) {
            const index_t pivot = column.back();
            const index_t owner = pivot_owner[pivot];
            if (owner < 0) break;
            const std::vector<index_t>& other = reduced[owner];
            merged.clear();
            std::set_symmetric_difference(column.begin(), column.end(), other.begin(),
                                          other.end(), std::back_inserter(merged));
            column.swap(merged);
        }
        if (column.empty()) {
            ++zero_columns;
            continue;
        }
        const index_t pivot = column.back();
        pivot_owner[pivot] = static_cast<index_t>(j);
        reduced[j] = column;
        const double birth = faces[pivot].value;
        const double death = cofaces[j].value;
        if (death > birth) out->push_back({birth, death, p});
    }
    return zero_columns;
}

}  // namespace

PersistenceDiagram compute_persistence(const CubicalFiltration& filtration, int dim) {
    if (dim != 0 && dim != 1)
        throw std::invalid_argument("compute_persistence: dim must be 0 or 1");
    PersistenceDiagram diagram;
    diagram.dim = dim;
    const size_t zero_columns = reduce_boundary(filtration, dim, &diagram.pairs);
    if (dim == 1 && zero_columns != 0) {
        // A nonempty set of squares in the plane always has nonempty
        // boundary, so every square column must carry a pivot; a zero column
        // would mean an essential 2-cycle, which this complex cannot have.
        throw std::logic_error("compute_persistence: unpaired 2-cell in planar complex");
    }
    return diagram;
}

double max_persistence(const PersistenceDiagram& diagram) {
    double best = 0.0;
    for (const PersistencePair& p : diagram.pairs) best = std::max(best, p.lifetime());
    return best;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram) {
    out << "dim,birth,death\n";
    char buf[64];
    for (const PersistencePair& p : diagram.pairs) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", p.dim, p.birth, p.death);
        out << buf;
    }
}

void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::ParseError, path.string() + ": cannot open for writing");
    write_diagram_csv(out, diagram);
}

Grid read_dense_cubical(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::ParseError, path.string() + ": cannot open");
    int dim_count = 0, rows = 0, cols = 0;
    if (!(in >> dim_count) || dim_count != 2)
        raise(ErrorCode::ParseError, path.string() + ": expected dimension count 2");
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        raise(ErrorCode::ParseError, path.string() + ": bad grid dimensions");
    Grid grid(rows, cols);
    for (size_t i = 0; i < grid.values.size(); ++i)
        if (!(in >> grid.values[i]))
            raise(ErrorCode::ParseError, path.string() + ": expected " +
                                             std::to_string(grid.values.size()) + " values");
    return grid;
}

}  // namespace diurnal
