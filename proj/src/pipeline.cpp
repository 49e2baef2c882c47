#include "diurnal/pipeline.hpp"

#include <algorithm>
#include <unordered_map>

#include "diurnal/grid_io.hpp"
#include "diurnal/parallel.hpp"

namespace diurnal {

const char* frame_flag_name(FrameFlag flag) {
    switch (flag) {
        case FrameFlag::None: return "none";
        case FrameFlag::AllForeground: return "all_foreground";
        case FrameFlag::AllBackground: return "all_background";
    }
    return "unknown";
}

LagDifference lag_difference(const FrameStack& stack, int64_t lag_minutes) {
    if (lag_minutes <= 0) raise(ErrorCode::BadParams, "lag must be positive");
    if (stack.size() < 2) raise(ErrorCode::NoPairs, "stack has fewer than 2 frames");
    std::unordered_map<int64_t, size_t> by_time;
    by_time.reserve(stack.size());
    for (size_t i = 0; i < stack.size(); ++i) by_time.emplace(stack.frames[i].t_minutes, i);

    LagDifference out;
    for (const Frame& f : stack.frames) {
        const auto partner = by_time.find(f.t_minutes + lag_minutes);
        if (partner == by_time.end()) {
            out.skipped_timestamps.push_back(f.t_minutes);
            continue;
        }
        const Grid& later = stack.frames[partner->second].grid;
        Grid diff(f.grid.rows, f.grid.cols, 0.0, f.grid.km_per_pixel);
        for (size_t i = 0; i < diff.values.size(); ++i)
            diff.values[i] = later.values[i] - f.grid.values[i];
        out.diffs.push_back(Frame{f.t_minutes, std::move(diff)});
    }
    if (out.diffs.empty())
        raise(ErrorCode::NoPairs, "no frame has a partner " + std::to_string(lag_minutes) +
                                      " minutes later");
    return out;
}

FrameResult frame_max_persistence(const Grid& diff, const PipelineConfig& cfg, int64_t t_minutes) {
    FrameResult result;
    result.t_minutes = t_minutes;

    BinaryGrid mask = threshold(diff, cfg.mu);
    if (cfg.opening_enabled) {
        // The features carrying the ring are the above-threshold cells (the
        // 0 bits); opening acts on that complement so isolated warm pixels
        // disappear instead of being preserved.
        mask = complement(opening(complement(mask), cfg.kernel));
    }

    bool any_zero = false, any_one = false;
    for (uint8_t bit : mask.bits) (bit ? any_one : any_zero) = true;
    if (!any_zero) {
        result.flag = FrameFlag::AllForeground;
        return result;
    }
    if (!any_one) {
        result.flag = FrameFlag::AllBackground;
        return result;
    }

    if (cfg.km_per_pixel > 0.0) mask.km_per_pixel = cfg.km_per_pixel;
    const Grid distance = distance_transform(mask);
    const PersistenceDiagram diagram = compute_persistence(build_filtration(distance), 1);
    result.max_persistence_km = max_persistence(diagram);
    return result;
}

DetectionReport run(const FrameStack& stack, const PipelineConfig& cfg) {
    DetectionReport report;
    report.config = cfg;
    report.km_per_pixel = cfg.km_per_pixel > 0.0 ? cfg.km_per_pixel : stack.km_per_pixel;

    FrameStack cropped;
    const FrameStack* input = &stack;
    if (cfg.crop) {
        cropped.km_per_pixel = stack.km_per_pixel;
        cropped.frames.reserve(stack.size());
        for (const Frame& f : stack.frames)
            cropped.frames.push_back(
                Frame{f.t_minutes, crop_center(f.grid, cfg.crop->first, cfg.crop->second)});
        input = &cropped;
    }

    LagDifference lagged = lag_difference(*input, cfg.lag_minutes);
    report.skipped_timestamps = lagged.skipped_timestamps;

    report.frames.resize(lagged.diffs.size());
    parallel_for(lagged.diffs.size(), [&](size_t i) {
        report.frames[i] =
            frame_max_persistence(lagged.diffs[i].grid, cfg, lagged.diffs[i].t_minutes);
    });

    for (const FrameResult& fr : report.frames)
        report.series.samples.push_back({fr.t_minutes, fr.max_persistence_km});

    report.uniform = resample_linear(report.series, cfg.dt_minutes);
    report.truncated = truncate_full_days(report.uniform);
    report.truncation_dropped = report.uniform.size() - report.truncated.size();
    report.spectrum = dft(report.truncated);
    report.dominant_freq_cycles_per_day = dominant_frequency(report.spectrum);
    report.period_hours = period_hours(report.dominant_freq_cycles_per_day);
    report.reconstruction = reconstruct(report.spectrum, report.dominant_freq_cycles_per_day);
    return report;
}

std::vector<SweepEntry> threshold_sweep(const FrameStack& stack, const PipelineConfig& cfg,
                                        const std::vector<double>& mus) {
    std::vector<SweepEntry> entries;
    entries.reserve(mus.size());
    for (double mu : mus) {
        PipelineConfig per_mu = cfg;
        per_mu.mu = mu;
        SweepEntry entry;
        entry.mu = mu;
        try {
            entry.period_hours = run(stack, per_mu).period_hours;
            entry.status = "ok";
        } catch (const Error& e) {
            entry.status = error_code_name(e.code());
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace diurnal
