// Brute-force reference implementations used only by tests. Each one takes a
// deliberately different route from the library code it checks.
#pragma once

#include <complex>
#include <vector>

#include "diurnal/cubical.hpp"
#include "diurnal/grid.hpp"
#include "diurnal/morphology.hpp"

namespace oracle {

/// Finite persistence pairs of the sublevel filtration in dimension dim,
/// computed from persistent Betti numbers: GF(2) ranks of boundary matrices
/// restricted to the sublevel complexes at every distinct grid value, then
/// inclusion-exclusion for multiplicities. No column reduction involved.
std::vector<diurnal::PersistencePair> persistence(const diurnal::Grid& grid, int dim);

/// Multi-source BFS over the 8-neighborhood (unit Chebyshev steps).
diurnal::Grid chebyshev_distance_bfs(const diurnal::BinaryGrid& b);

/// The defining DFT sum, evaluated term by term.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& values);
std::vector<std::complex<double>> naive_inverse_dft(
    const std::vector<std::complex<double>>& coeffs);

/// Sliding-window erosion with an explicit out-of-image fill bit.
diurnal::BinaryGrid erode_sliding(const diurnal::BinaryGrid& b,
                                  const diurnal::StructuringElement& se, int outside_fill);

/// Opening characterized independently: the union of all kernel stamps fully
/// contained in the input foreground.
diurnal::BinaryGrid opening_stamps(const diurnal::BinaryGrid& b,
                                   const diurnal::StructuringElement& se);

/// Multiset equality of diagrams (exact value comparison).
bool same_pairs(std::vector<diurnal::PersistencePair> a, std::vector<diurnal::PersistencePair> b);

}  // namespace oracle
