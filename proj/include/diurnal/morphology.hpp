#pragma once

#include "diurnal/grid.hpp"

namespace diurnal {

/// All-ones rectangular kernel. The anchor is fixed at
/// (floor((k_rows-1)/2), floor((k_cols-1)/2)) so even kernels behave
/// reproducibly.
struct StructuringElement {
    int k_rows = 1;
    int k_cols = 1;

    int anchor_row() const { return (k_rows - 1) / 2; }
    int anchor_col() const { return (k_cols - 1) / 2; }
};

/// bit = 1 where value < mu (strict), else 0.
BinaryGrid threshold(const Grid& diff, double mu);

/// Output is 1 at p iff every kernel cell, anchored at p, lies over an
/// in-image 1. Cells outside the image count as 0, so erosion shrinks at
/// borders.
BinaryGrid erode(const BinaryGrid& b, const StructuringElement& se);

/// Adjoint of erode: the union of kernel stamps anchored at the 1-pixels
/// (cells falling outside the image are clipped). With this pairing,
/// opening = dilate(erode(b)) is anti-extensive and idempotent for every
/// kernel size, even ones included.
BinaryGrid dilate(const BinaryGrid& b, const StructuringElement& se);

/// Erosion followed by dilation.
BinaryGrid opening(const BinaryGrid& b, const StructuringElement& se);

/// Chessboard (L-infinity) distance to the nearest 0 bit, scaled by
/// km_per_pixel. Exactly 0 on 0-cells; every value is an integer multiple
/// of km_per_pixel. Throws AllForeground when no 0 bit exists.
Grid distance_transform(const BinaryGrid& b);

}  // namespace diurnal
