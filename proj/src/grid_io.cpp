#include "diurnal/grid_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string_view>

#include "diurnal/timeutil.hpp"

namespace fs = std::filesystem;

namespace diurnal {

namespace {

constexpr char kMagic[4] = {'F', '3', '2', 'G'};

[[noreturn]] void parse_fail(const fs::path& path, size_t line, const std::string& what) {
    raise(ErrorCode::ParseError, path.string() + ":" + std::to_string(line) + ": " + what);
}

uint32_t read_u32le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
           static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

void write_u32le(std::ostream& out, uint32_t v) {
    const unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xff),
                                    static_cast<unsigned char>((v >> 8) & 0xff),
                                    static_cast<unsigned char>((v >> 16) & 0xff),
                                    static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

double mean_of_window(const Grid& g, int ci, int cj, int radius, int* count) {
    double sum = 0.0;
    int n = 0;
    const int i0 = std::max(0, ci - radius), i1 = std::min(g.rows - 1, ci + radius);
    const int j0 = std::max(0, cj - radius), j1 = std::min(g.cols - 1, cj + radius);
    for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j) {
            const double v = g.at(i, j);
            if (!std::isnan(v)) {
                sum += v;
                ++n;
            }
        }
    *count = n;
    return n > 0 ? sum / n : 0.0;
}

}  // namespace

double convert_gridsat(double raw) {
    return ((raw * 0.01 + 200.0) - 22.858) / 0.919565;
}

Grid fill_missing(const Grid& grid) {
    bool any_finite = false;
    bool any_fill = false;
    for (double v : grid.values) {
        if (std::isnan(v))
            any_fill = true;
        else
            any_finite = true;
    }
    if (!any_fill) return grid;
    if (!any_finite) raise(ErrorCode::AllMissing, "grid has no non-fill cell");

    // Both passes average the originally valid cells only, so the result
    // does not depend on cell visit order and a second application is a
    // no-op.
    Grid out = grid;
    std::vector<std::pair<int, int>> unresolved;
    for (int i = 0; i < grid.rows; ++i)
        for (int j = 0; j < grid.cols; ++j) {
            if (!std::isnan(grid.at(i, j))) continue;
            int n = 0;
            const double m = mean_of_window(grid, i, j, 2, &n);
            if (n > 0)
                out.at(i, j) = m;
            else
                unresolved.emplace_back(i, j);
        }
    for (const auto& [i, j] : unresolved) {
        int n = 0;
        const double m = mean_of_window(grid, i, j, 3, &n);
        if (n == 0)
            raise(ErrorCode::Unresolvable, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") has no valid neighbor within 7x7");
        out.at(i, j) = m;
    }
    return out;
}

Grid crop_center(const Grid& grid, int out_rows, int out_cols) {
    if (out_rows < 1 || out_cols < 1 || out_rows > grid.rows || out_cols > grid.cols)
        raise(ErrorCode::BadCropSize, std::to_string(out_rows) + "x" + std::to_string(out_cols) +
                                          " from " + std::to_string(grid.rows) + "x" +
                                          std::to_string(grid.cols));
    // Odd margins drop the extra row/column from the bottom/right.
    const int top = (grid.rows - out_rows) / 2;
    const int left = (grid.cols - out_cols) / 2;
    Grid out(out_rows, out_cols, 0.0, grid.km_per_pixel);
    for (int i = 0; i < out_rows; ++i)
        for (int j = 0; j < out_cols; ++j) out.at(i, j) = grid.at(top + i, left + j);
    return out;
}

RawGrid read_frame_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::ParseError, path.string() + ": cannot open");
    RawGrid raw;
    std::vector<double> values;
    int cols = -1;
    int rows = 0;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        int row_cols = 0;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            std::string_view tok(line.data() + pos, comma - pos);
            while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
            while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
            if (tok.empty()) parse_fail(path, line_no, "empty field");
            if (tok == "NA") {
                values.push_back(std::numeric_limits<double>::quiet_NaN());
                raw.has_fill_cells = true;
            } else {
                double v = 0.0;
                const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                    parse_fail(path, line_no, "bad number '" + std::string(tok) + "'");
                if (std::isnan(v) || std::isinf(v))
                    parse_fail(path, line_no, "non-finite value");
                values.push_back(v);
            }
            ++row_cols;
            if (comma == line.size()) break;
            pos = comma + 1;
        }
        if (cols < 0)
            cols = row_cols;
        else if (row_cols != cols)
            parse_fail(path, line_no, "row has " + std::to_string(row_cols) +
                                          " fields, expected " + std::to_string(cols));
        ++rows;
    }
    if (rows == 0) raise(ErrorCode::ParseError, path.string() + ": empty frame file");
    raw.grid.rows = rows;
    raw.grid.cols = cols;
    raw.grid.values = std::move(values);
    return raw;
}

RawGrid read_frame_f32(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, path.string() + ": cannot open");
    unsigned char header[16];
    if (!in.read(reinterpret_cast<char*>(header), sizeof(header)))
        raise(ErrorCode::ParseError, path.string() + ": truncated header");
    if (std::memcmp(header, kMagic, 4) != 0)
        raise(ErrorCode::ParseError, path.string() + ": bad magic");
    const uint32_t rows = read_u32le(header + 4);
    const uint32_t cols = read_u32le(header + 8);
    const uint32_t reserved = read_u32le(header + 12);
    if (rows == 0 || cols == 0 || reserved != 0)
        raise(ErrorCode::ParseError, path.string() + ": bad header fields");
    RawGrid raw;
    raw.grid.rows = static_cast<int>(rows);
    raw.grid.cols = static_cast<int>(cols);
    const size_t n = static_cast<size_t>(rows) * cols;
    std::vector<float> buf(n);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * 4)))
        raise(ErrorCode::ParseError, path.string() + ": truncated payload");
    raw.grid.values.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (std::isnan(buf[i])) {
            raw.grid.values[i] = std::numeric_limits<double>::quiet_NaN();
            raw.has_fill_cells = true;
        } else if (std::isinf(buf[i])) {
            raise(ErrorCode::ParseError, path.string() + ": non-finite value");
        } else {
            raw.grid.values[i] = static_cast<double>(buf[i]);
        }
    }
    return raw;
}

void write_frame_csv(const fs::path& path, const Grid& grid) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::ParseError, path.string() + ": cannot open for writing");
    char buf[40];
    for (int i = 0; i < grid.rows; ++i) {
        for (int j = 0; j < grid.cols; ++j) {
            const double v = grid.at(i, j);
            if (std::isnan(v)) {
                out << "NA";
            } else {
                std::snprintf(buf, sizeof(buf), "%.9g", v);
                out << buf;
            }
            out << (j + 1 < grid.cols ? ',' : '\n');
        }
    }
}

void write_frame_f32(const fs::path& path, const Grid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::ParseError, path.string() + ": cannot open for writing");
    out.write(kMagic, 4);
    write_u32le(out, static_cast<uint32_t>(grid.rows));
    write_u32le(out, static_cast<uint32_t>(grid.cols));
    write_u32le(out, 0);
    std::vector<float> buf(grid.values.size());
    for (size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(grid.values[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * 4));
}

FrameStack load_stack(const fs::path& directory, const LoadOptions& options) {
    LoadOptions opts = options;
    // manifest.json supplies defaults; explicit options win.
    const fs::path manifest_path = directory / "manifest.json";
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        nlohmann::json manifest;
        try {
            in >> manifest;
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::ParseError, manifest_path.string() + ": " + e.what());
        }
        if (!opts.km_per_pixel && manifest.contains("km_per_pixel"))
            opts.km_per_pixel = manifest["km_per_pixel"].get<double>();
        if (!opts.gridsat_convert && manifest.contains("gridsat_convert"))
            opts.gridsat_convert = manifest["gridsat_convert"].get<bool>();
        if (!opts.fill_missing && manifest.contains("fill_missing"))
            opts.fill_missing = manifest["fill_missing"].get<bool>();
    }
    const double km = opts.km_per_pixel.value_or(1.0);
    const bool do_convert = opts.gridsat_convert.value_or(false);
    const bool do_fill = opts.fill_missing.value_or(false);

    std::vector<std::pair<int64_t, fs::path>> entries;
    if (fs::exists(directory)) {
        for (const auto& entry : fs::directory_iterator(directory)) {
            if (!entry.is_regular_file()) continue;
            const fs::path p = entry.path();
            const std::string ext = p.extension().string();
            const bool csv = ext == ".csv";
            const bool bin = ext == ".f32grid";
            if (!csv && !bin) continue;
            if (opts.format == FrameFormat::Csv && !csv) continue;
            if (opts.format == FrameFormat::Binary && !bin) continue;
            entries.emplace_back(parse_frame_timestamp(p.stem().string()), p);
        }
    }
    if (entries.empty()) raise(ErrorCode::NoFrames, "no frame files in " + directory.string());
    std::sort(entries.begin(), entries.end());
    for (size_t i = 1; i < entries.size(); ++i)
        if (entries[i].first == entries[i - 1].first)
            raise(ErrorCode::BadTimestamp, "duplicate timestamp " +
                                               format_frame_timestamp(entries[i].first) + " (" +
                                               entries[i].second.filename().string() + ")");

    FrameStack stack;
    stack.km_per_pixel = km;
    stack.frames.resize(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& [t, path] = entries[i];
        RawGrid raw = path.extension() == ".csv" ? read_frame_csv(path) : read_frame_f32(path);
        raw.grid.km_per_pixel = km;
        if (do_convert) {
            for (double& v : raw.grid.values)
                if (!std::isnan(v)) v = convert_gridsat(v);
        }
        if (raw.has_fill_cells) {
            if (!do_fill)
                raise(ErrorCode::ParseError,
                      path.string() + ": fill cells present but fill_missing disabled");
            raw.grid = fill_missing(raw.grid);
        }
        if (opts.crop) raw.grid = crop_center(raw.grid, opts.crop->first, opts.crop->second);
        stack.frames[i] = Frame{t, std::move(raw.grid)};
    }
    stack.validate();
    return stack;
}

void write_stack(const fs::path& directory, const FrameStack& stack, FrameFormat format) {
    fs::create_directories(directory);
    for (const Frame& f : stack.frames) {
        const std::string stem = format_frame_timestamp(f.t_minutes);
        if (format == FrameFormat::Csv)
            write_frame_csv(directory / (stem + ".csv"), f.grid);
        else
            write_frame_f32(directory / (stem + ".f32grid"), f.grid);
    }
}

}  // namespace diurnal
