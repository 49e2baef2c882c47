#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "diurnal/grid.hpp"

namespace diurnal {

/// Raw frame as read from disk: NaN entries mark fill (missing) cells.
/// Grids handed out by load_stack are always fully finite.
struct RawGrid {
    Grid grid;
    bool has_fill_cells = false;
};

enum class FrameFormat { Csv, Binary };

struct LoadOptions {
    std::optional<FrameFormat> format;     // default: inferred per file extension
    std::optional<bool> gridsat_convert;   // apply the GridSat count conversion
    std::optional<bool> fill_missing;      // interpolate fill cells
    std::optional<double> km_per_pixel;
    std::optional<std::pair<int, int>> crop;  // rows, cols
};

/// GridSat short-count to brightness conversion:
/// ((raw * 0.01 + 200.0) - 22.858) / 0.919565.
double convert_gridsat(double raw);

/// Replaces every NaN cell by the mean of the finite cells in the 5x5 window
/// centered on it (clipped at borders). Cells whose 5x5 window holds no
/// finite value get a second pass with a 7x7 window. Finite cells are never
/// touched, so the operation is idempotent.
Grid fill_missing(const Grid& grid);

/// Centered out_rows x out_cols submatrix. Odd margins drop the extra
/// row/column from the bottom/right.
Grid crop_center(const Grid& grid, int out_rows, int out_cols);

/// Reads one frame file. CSV: comma-separated rows, literal NA = fill cell.
/// Binary (.f32grid): F32G magic, u32le rows/cols/reserved, f32le row-major,
/// NaN = fill cell.
RawGrid read_frame_csv(const std::filesystem::path& path);
RawGrid read_frame_f32(const std::filesystem::path& path);

void write_frame_csv(const std::filesystem::path& path, const Grid& grid);
void write_frame_f32(const std::filesystem::path& path, const Grid& grid);

/// Loads every frame file in the directory (name YYYYMMDDTHHMMZ.csv or
/// .f32grid), sorted by the timestamp parsed from the filename. An optional
/// manifest.json supplies defaults for km_per_pixel / gridsat_convert /
/// fill_missing; explicit LoadOptions fields win over the manifest.
FrameStack load_stack(const std::filesystem::path& directory, const LoadOptions& options = {});

/// Writes one file per frame into the directory using the stack's timestamps.
void write_stack(const std::filesystem::path& directory, const FrameStack& stack,
                 FrameFormat format);

}  // namespace diurnal
