#pragma once

#include <iosfwd>

#include "diurnal/spectral.hpp"

namespace diurnal {

/// Line plot of a series (solid) with an optional overlay (dashed), vertical
/// gridlines at UTC day boundaries. Plain-text SVG, no raster dependencies.
void write_series_svg(std::ostream& out, const UniformSeries& series,
                      const UniformSeries* overlay, const std::string& y_label);

}  // namespace diurnal
