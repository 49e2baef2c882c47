#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diurnal/cubical.hpp"
#include "diurnal/grid.hpp"
#include "diurnal/morphology.hpp"
#include "diurnal/spectral.hpp"

namespace diurnal {

struct PipelineConfig {
    double mu = 80.0;
    int64_t lag_minutes = 360;
    bool opening_enabled = false;
    StructuringElement kernel{2, 2};
    double km_per_pixel = 0.0;  // 0 = take the stack's value
    int64_t dt_minutes = 180;
    std::optional<std::pair<int, int>> crop;
    bool gridsat_convert = false;  // applied at load time; echoed in reports
};

enum class FrameFlag { None, AllForeground, AllBackground };

const char* frame_flag_name(FrameFlag flag);

struct FrameResult {
    int64_t t_minutes = 0;
    double max_persistence_km = 0.0;
    FrameFlag flag = FrameFlag::None;
};

struct DetectionReport {
    PipelineConfig config;
    double km_per_pixel = 1.0;
    std::vector<FrameResult> frames;          // one per valid lag pair
    std::vector<int64_t> skipped_timestamps;  // frames lacking a lag partner
    TimeSeries series;                        // max persistence over time, km
    UniformSeries uniform;                    // resampled series
    UniformSeries truncated;                  // full UTC days only
    size_t truncation_dropped = 0;
    Spectrum spectrum;
    double dominant_freq_cycles_per_day = 0.0;
    double period_hours = 0.0;
    UniformSeries reconstruction;
};

/// Elementwise S(t + lag) - S(t) for every frame having an exact partner at
/// t + lag. Frames without a partner are skipped and reported. Throws
/// NoPairs when nothing pairs up.
struct LagDifference {
    std::vector<Frame> diffs;                 // timestamped at t
    std::vector<int64_t> skipped_timestamps;
};
LagDifference lag_difference(const FrameStack& stack, int64_t lag_minutes);

/// One frame through threshold -> (optional opening) -> distance transform
/// -> dim-1 persistence -> max persistence, in km. Degenerate masks yield a
/// flagged 0 instead of an error.
FrameResult frame_max_persistence(const Grid& diff, const PipelineConfig& cfg,
                                  int64_t t_minutes = 0);

/// Full detection pipeline: lag differences, per-frame max persistence
/// (parallel across frames), resampling, full-day truncation, DFT, dominant
/// frequency, period, single-bin reconstruction.
DetectionReport run(const FrameStack& stack, const PipelineConfig& cfg);

/// Per-threshold pipeline outcomes; failures are recorded, not raised.
struct SweepEntry {
    double mu = 0.0;
    std::optional<double> period_hours;
    std::string status;  // "ok" or the error code name
};
std::vector<SweepEntry> threshold_sweep(const FrameStack& stack, const PipelineConfig& cfg,
                                        const std::vector<double>& mus);

}  // namespace diurnal
