#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "diurnal/grid.hpp"

namespace diurnal {

struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;
    int dim = 1;

    double lifetime() const { return death - birth; }
    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Multiset of (birth, death) pairs for one homology dimension.
struct PersistenceDiagram {
    int dim = 1;
    std::vector<PersistencePair> pairs;
};

/// Sublevel-set filtration of the full cubical complex on an m x n grid.
///
/// Cells live on the doubled lattice (2m+1) x (2n+1): cell (a, b) has
/// dimension (a mod 2) + (b mod 2). The square for matrix entry (i, j) sits
/// at (2i+1, 2j+1) and carries grid[i][j]; every lower-dimensional cell
/// carries the minimum over the squares it is a face of, which makes the
/// value map monotone under the face relation.
class CubicalFiltration {
public:
    explicit CubicalFiltration(const Grid& grid);

    int grid_rows() const { return rows_; }
    int grid_cols() const { return cols_; }
    int lattice_rows() const { return 2 * rows_ + 1; }
    int lattice_cols() const { return 2 * cols_ + 1; }
    size_t cell_count() const { return values_.size(); }

    double value(int a, int b) const {
        return values_[static_cast<size_t>(a) * lattice_cols() + b];
    }
    static int cell_dim(int a, int b) { return (a & 1) + (b & 1); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> values_;  // indexed by doubled-lattice position
};

/// Assigns grid values to squares and min-over-cofaces to lower cells.
CubicalFiltration build_filtration(const Grid& grid);

/// Persistent homology of the sublevel filtration with Z2 coefficients, by
/// column reduction of the boundary matrix in filtration order
/// (value, dim, row-major anchor). Zero-persistence pairs are discarded.
/// dim must be 0 or 1; the single essential dim-0 class (the component that
/// survives to the full complex) is not reported.
PersistenceDiagram compute_persistence(const CubicalFiltration& filtration, int dim = 1);

/// Largest death - birth over the diagram; 0 when empty.
double max_persistence(const PersistenceDiagram& diagram);

/// CSV export, header "dim,birth,death".
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram);
void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram);

/// Dense cubical text format for cross-validation with external tools:
/// line 1: dimension count (must be 2), then rows, then cols, then rows*cols
/// values row-major, one per line.
Grid read_dense_cubical(const std::filesystem::path& path);

}  // namespace diurnal
