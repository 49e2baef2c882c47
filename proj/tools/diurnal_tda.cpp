// Command-line front end: ingestion, the detection pipeline, threshold
// sweeps, synthetic data generation, and per-frame stage dumps.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 no detectable signal.

#include <CLI11.hpp>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "diurnal/cubical.hpp"
#include "diurnal/grid_io.hpp"
#include "diurnal/pipeline.hpp"
#include "diurnal/spectral.hpp"
#include "diurnal/svg_plot.hpp"
#include "diurnal/synth.hpp"
#include "diurnal/timeutil.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(diurnal::ErrorCode code) {
    switch (code) {
        case diurnal::ErrorCode::NoSignal:
        case diurnal::ErrorCode::NoCompleteDays:
            return 3;
        case diurnal::ErrorCode::BadParams:
            return 1;
        default:
            return 2;
    }
}

[[noreturn]] void fail(const diurnal::Error& e) {
    std::cerr << "error: code=" << diurnal::error_code_name(e.code()) << " message=\"" << e.what()
              << "\"\n";
    std::exit(exit_code_for(e.code()));
}

std::string snake_case(std::string name) {
    std::string out;
    for (char c : name) {
        if (std::isupper(static_cast<unsigned char>(c))) {
            if (!out.empty()) out += '_';
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            out += c;
        }
    }
    return out;
}

std::pair<int, int> parse_dims(const std::string& text, const std::string& flag) {
    const size_t x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size())
        throw CLI::ValidationError(flag, "expected RxC, e.g. 8x8");
    try {
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected RxC, e.g. 8x8");
    }
}

struct CommonFlags {
    double mu = 80.0;
    double lag_hours = 6.0;
    bool open_flag = false;
    bool no_open_flag = false;
    std::string kernel_text;
    double km_per_pixel = 0.0;
    int64_t dt_minutes = 0;
    std::string crop_text;
    bool gridsat_convert = false;
    std::string out_dir = ".";

    void attach(CLI::App* cmd) {
        cmd->add_option("--mu", mu, "Difference threshold (default 80)");
        cmd->add_option("--lag-hours", lag_hours, "Differencing lag in hours (default 6)");
        cmd->add_flag("--open", open_flag, "Enable morphological opening of the warm mask");
        cmd->add_flag("--no-open", no_open_flag, "Disable opening (default)");
        cmd->add_option("--kernel", kernel_text,
                        "Opening kernel RxC (default 8x8 below 5 km/px, else 2x2)");
        cmd->add_option("--km-per-pixel", km_per_pixel, "Pixel resolution in km");
        cmd->add_option("--dt-minutes", dt_minutes,
                        "Resample step in minutes (default: median frame spacing)");
        cmd->add_option("--crop", crop_text, "Center-crop frames to RxC before processing");
        cmd->add_flag("--gridsat-convert", gridsat_convert, "Apply the GridSat count conversion");
        cmd->add_option("--out", out_dir, "Output directory (default .)");
    }

    diurnal::LoadOptions load_options() const {
        diurnal::LoadOptions opts;
        if (gridsat_convert) opts.gridsat_convert = true;
        opts.fill_missing = true;
        if (km_per_pixel > 0.0) opts.km_per_pixel = km_per_pixel;
        return opts;
    }

    diurnal::PipelineConfig config(const diurnal::FrameStack& stack) const {
        diurnal::PipelineConfig cfg;
        cfg.mu = mu;
        cfg.lag_minutes = static_cast<int64_t>(lag_hours * 60.0 + 0.5);
        cfg.opening_enabled = open_flag && !no_open_flag;
        cfg.km_per_pixel = km_per_pixel > 0.0 ? km_per_pixel : stack.km_per_pixel;
        if (!kernel_text.empty()) {
            const auto [r, c] = parse_dims(kernel_text, "--kernel");
            cfg.kernel = {r, c};
        } else {
            cfg.kernel = cfg.km_per_pixel < 5.0 ? diurnal::StructuringElement{8, 8}
                                                : diurnal::StructuringElement{2, 2};
        }
        if (!crop_text.empty()) cfg.crop = parse_dims(crop_text, "--crop");
        if (dt_minutes > 0) {
            cfg.dt_minutes = dt_minutes;
        } else {
            // median spacing of the input frames
            std::vector<int64_t> gaps;
            for (size_t i = 1; i < stack.size(); ++i)
                gaps.push_back(stack.frames[i].t_minutes - stack.frames[i - 1].t_minutes);
            if (gaps.empty()) gaps.push_back(60);
            std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
            cfg.dt_minutes = gaps[gaps.size() / 2];
        }
        cfg.gridsat_convert = gridsat_convert;
        return cfg;
    }
};

json config_json(const diurnal::PipelineConfig& cfg) {
    json j;
    j["mu"] = cfg.mu;
    j["lag_minutes"] = cfg.lag_minutes;
    j["opening_enabled"] = cfg.opening_enabled;
    j["kernel"] = {cfg.kernel.k_rows, cfg.kernel.k_cols};
    j["km_per_pixel"] = cfg.km_per_pixel;
    j["dt_minutes"] = cfg.dt_minutes;
    if (cfg.crop)
        j["crop"] = {cfg.crop->first, cfg.crop->second};
    else
        j["crop"] = nullptr;
    j["gridsat_convert"] = cfg.gridsat_convert;
    return j;
}

void write_text_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
}

int cmd_run(const std::string& input_dir, const CommonFlags& flags) {
    diurnal::FrameStack stack = diurnal::load_stack(input_dir, flags.load_options());
    const diurnal::PipelineConfig cfg = flags.config(stack);
    const diurnal::DetectionReport report = diurnal::run(stack, cfg);

    fs::create_directories(flags.out_dir);
    const fs::path out(flags.out_dir);

    {
        std::ofstream f(out / "series.csv");
        diurnal::write_series_csv(f, report.series);
    }
    {
        std::ofstream f(out / "spectrum.csv");
        diurnal::write_spectrum_csv(f, report.spectrum);
    }
    {
        std::ofstream f(out / "reconstruction.csv");
        diurnal::write_series_csv(f, report.reconstruction);
    }
    {
        std::ofstream f(out / "series.svg");
        diurnal::write_series_svg(f, report.uniform, &report.reconstruction,
                                  "max persistence (km)");
    }

    json j;
    j["config"] = config_json(report.config);
    j["km_per_pixel"] = report.km_per_pixel;
    j["frames"] = json::array();
    for (const auto& fr : report.frames) {
        j["frames"].push_back({{"timestamp", diurnal::format_iso8601(fr.t_minutes)},
                               {"max_persistence_km", fr.max_persistence_km},
                               {"flag", diurnal::frame_flag_name(fr.flag)}});
    }
    j["skipped_timestamps"] = json::array();
    for (int64_t t : report.skipped_timestamps)
        j["skipped_timestamps"].push_back(diurnal::format_iso8601(t));
    j["truncation_dropped_samples"] = report.truncation_dropped;
    j["dominant_frequency_cycles_per_day"] = report.dominant_freq_cycles_per_day;
    j["period_hours"] = report.period_hours;
    j["files"] = {{"series_csv", (out / "series.csv").string()},
                  {"spectrum_csv", (out / "spectrum.csv").string()},
                  {"reconstruction_csv", (out / "reconstruction.csv").string()},
                  {"series_svg", (out / "series.svg").string()}};
    write_text_file(out / "report.json", j.dump(2) + "\n");

    std::printf("period_hours=%g\n", report.period_hours);
    return 0;
}

int cmd_sweep(const std::string& input_dir, const CommonFlags& flags,
              const std::vector<double>& mus) {
    diurnal::FrameStack stack = diurnal::load_stack(input_dir, flags.load_options());
    const diurnal::PipelineConfig cfg = flags.config(stack);
    const auto entries = diurnal::threshold_sweep(stack, cfg, mus);

    fs::create_directories(flags.out_dir);
    std::ofstream f(fs::path(flags.out_dir) / "sweep.csv");
    f << "mu,period_hours,status\n";
    char buf[80];
    for (const auto& e : entries) {
        if (e.period_hours)
            std::snprintf(buf, sizeof(buf), "%g,%g,%s\n", e.mu, *e.period_hours,
                          snake_case(e.status).c_str());
        else
            std::snprintf(buf, sizeof(buf), "%g,,%s\n", e.mu, snake_case(e.status).c_str());
        f << buf;
    }
    return 0;
}

int cmd_synth(const diurnal::SynthParams& params, const std::string& out_dir,
              const std::string& format) {
    const diurnal::FrameStack stack = diurnal::generate(params);
    const auto fmt =
        format == "f32" ? diurnal::FrameFormat::Binary : diurnal::FrameFormat::Csv;
    diurnal::write_stack(out_dir, stack, fmt);

    json manifest;
    manifest["km_per_pixel"] = params.km_per_pixel;
    manifest["gridsat_convert"] = false;
    manifest["fill_missing"] = false;
    write_text_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

    json truth;
    truth["period_hours"] = params.period_hours;
    truth["km_per_pixel"] = params.km_per_pixel;
    truth["sample_dt_minutes"] = params.sample_dt_minutes;
    truth["duration_days"] = params.duration_days;
    truth["pulse_speed_km_per_hr"] = params.pulse_speed_km_per_hr;
    truth["salt_count"] = params.salt_count;
    truth["rng_seed"] = params.rng_seed;
    // any threshold strictly above 0 and at most warm_amplitude sees the ring
    truth["mu_band"] = {5.0, params.warm_amplitude};
    write_text_file(fs::path(out_dir) / "truth.json", truth.dump(2) + "\n");
    std::printf("frames=%zu out=%s\n", stack.size(), out_dir.c_str());
    return 0;
}

int cmd_frame(const std::string& input_dir, const CommonFlags& flags,
              const std::string& timestamp) {
    diurnal::FrameStack stack = diurnal::load_stack(input_dir, flags.load_options());
    const diurnal::PipelineConfig cfg = flags.config(stack);
    const int64_t t = diurnal::parse_frame_timestamp(timestamp);

    if (cfg.crop) {
        for (auto& fr : stack.frames)
            fr.grid = diurnal::crop_center(fr.grid, cfg.crop->first, cfg.crop->second);
    }
    const diurnal::LagDifference lagged = diurnal::lag_difference(stack, cfg.lag_minutes);
    const diurnal::Frame* match = nullptr;
    for (const auto& d : lagged.diffs)
        if (d.t_minutes == t) match = &d;
    if (!match)
        diurnal::raise(diurnal::ErrorCode::NoPairs,
                       "no " + std::to_string(cfg.lag_minutes) + "-minute partner for " + timestamp);

    diurnal::BinaryGrid mask = diurnal::threshold(match->grid, cfg.mu);
    diurnal::BinaryGrid opened = mask;
    if (cfg.opening_enabled)
        opened = diurnal::complement(diurnal::opening(diurnal::complement(mask), cfg.kernel));

    diurnal::BinaryGrid final_mask = opened;
    if (cfg.km_per_pixel > 0.0) final_mask.km_per_pixel = cfg.km_per_pixel;

    bool any_zero = false;
    for (uint8_t bit : final_mask.bits)
        if (!bit) any_zero = true;

    diurnal::Grid distance;
    diurnal::PersistenceDiagram diagram;
    diagram.dim = 1;
    if (any_zero) {
        distance = diurnal::distance_transform(final_mask);
        diagram = diurnal::compute_persistence(diurnal::build_filtration(distance), 1);
    } else {
        distance = diurnal::Grid(final_mask.rows, final_mask.cols, 0.0, final_mask.km_per_pixel);
    }

    fs::create_directories(flags.out_dir);
    const fs::path out(flags.out_dir);
    auto as_grid = [](const diurnal::BinaryGrid& b) {
        diurnal::Grid g(b.rows, b.cols, 0.0, b.km_per_pixel);
        for (size_t i = 0; i < b.bits.size(); ++i) g.values[i] = b.bits[i];
        return g;
    };
    diurnal::write_frame_csv(out / "difference.csv", match->grid);
    diurnal::write_frame_csv(out / "mask.csv", as_grid(mask));
    diurnal::write_frame_csv(out / "mask_opened.csv", as_grid(opened));
    diurnal::write_frame_csv(out / "distance_km.csv", distance);
    diurnal::write_diagram_csv(out / "diagram.csv", diagram);
    std::printf("files=5 out=%s\n", flags.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detects periodic ring structure in timestamped gridded imagery"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, frame_flags;
    std::string run_input, sweep_input, frame_input, frame_timestamp;
    std::vector<double> mu_list;

    CLI::App* run_cmd = app.add_subcommand("run", "Full detection pipeline on a frame directory");
    run_cmd->add_option("input", run_input, "Directory of frame files")->required();
    run_flags.attach(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the pipeline across thresholds");
    sweep_cmd->add_option("input", sweep_input, "Directory of frame files")->required();
    sweep_cmd->add_option("--mu-list", mu_list, "Thresholds to sweep")->required()->delimiter(',');
    sweep_flags.attach(sweep_cmd);

    diurnal::SynthParams synth_params;
    std::string synth_out, synth_format = "csv";
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic pulse data set");
    synth_cmd->add_option("--out", synth_out, "Output directory")->required();
    synth_cmd->add_option("--rows", synth_params.rows, "Grid rows (default 128)");
    synth_cmd->add_option("--cols", synth_params.cols, "Grid cols (default 128)");
    synth_cmd->add_option("--km-per-pixel", synth_params.km_per_pixel, "Resolution (default 8)");
    synth_cmd->add_option("--period-hours", synth_params.period_hours, "True period (default 24)");
    synth_cmd->add_option("--speed", synth_params.pulse_speed_km_per_hr,
                          "Ring speed km/h (default 18)");
    synth_cmd->add_option("--ring-start-km", synth_params.ring_start_km,
                          "Inner radius at phase 0 (default 40)");
    synth_cmd->add_option("--ring-width-km", synth_params.ring_width_km, "Ring width (default 16)");
    synth_cmd->add_option("--warm-amplitude", synth_params.warm_amplitude,
                          "Ring height in the difference (default 120)");
    synth_cmd->add_option("--cool-amplitude", synth_params.cool_amplitude,
                          "Disk depth in the difference (default 40)");
    synth_cmd->add_option("--dt-minutes", synth_params.sample_dt_minutes,
                          "Frame spacing (default 180)");
    synth_cmd->add_option("--duration-days", synth_params.duration_days, "Days (default 4)");
    synth_cmd->add_option("--salt", synth_params.salt_count, "Salt pixels per frame (default 0)");
    synth_cmd->add_option("--seed", synth_params.rng_seed, "RNG seed (default 0)");
    synth_cmd->add_option("--drift-dx", synth_params.drift_dx_km_per_hr, "Center drift km/h");
    synth_cmd->add_option("--drift-dy", synth_params.drift_dy_km_per_hr, "Center drift km/h");
    synth_cmd->add_option("--format", synth_format, "csv or f32 (default csv)")
        ->check(CLI::IsMember({"csv", "f32"}));

    CLI::App* frame_cmd =
        app.add_subcommand("frame", "Dump the pipeline stages for one difference frame");
    frame_cmd->add_option("input", frame_input, "Directory of frame files")->required();
    frame_cmd->add_option("--timestamp", frame_timestamp, "Frame time YYYYMMDDTHHMMZ")->required();
    frame_flags.attach(frame_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: code=Usage message=\"" << e.what() << "\"\n";
        return 1;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_input, run_flags);
        if (sweep_cmd->parsed()) {
            if (mu_list.empty()) {
                std::cerr << "error: code=Usage message=\"--mu-list must be nonempty\"\n";
                return 1;
            }
            return cmd_sweep(sweep_input, sweep_flags, mu_list);
        }
        if (synth_cmd->parsed()) return cmd_synth(synth_params, synth_out, synth_format);
        if (frame_cmd->parsed()) return cmd_frame(frame_input, frame_flags, frame_timestamp);
    } catch (const diurnal::Error& e) {
        fail(e);
    } catch (const std::exception& e) {
        std::cerr << "error: code=Internal message=\"" << e.what() << "\"\n";
        return 2;
    }
    return 0;
}
