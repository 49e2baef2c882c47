#include "diurnal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "diurnal/timeutil.hpp"

namespace diurnal {

namespace {

constexpr int64_t kLagMinutes = 360;  // differences are taken six hours apart
constexpr double kBaseBrightness = 250.0;

// start of the synthetic record; any fixed UTC midnight works
const int64_t kEpochStart = parse_frame_timestamp("20070901T0000Z");

struct RingGeometry {
    int center_row;
    int center_col;
    double inner_km;
    double outer_km;
};

RingGeometry ring_at(const SynthParams& p, int64_t t_minutes) {
    const double hours = static_cast<double>(t_minutes - kEpochStart) / 60.0;
    const double phase = std::fmod(hours, p.period_hours);
    RingGeometry g;
    g.inner_km = p.ring_start_km + p.pulse_speed_km_per_hr * phase;
    g.outer_km = g.inner_km + p.ring_width_km;
    g.center_row = p.rows / 2 +
                   static_cast<int>(std::lround(p.drift_dy_km_per_hr * hours / p.km_per_pixel));
    g.center_col = p.cols / 2 +
                   static_cast<int>(std::lround(p.drift_dx_km_per_hr * hours / p.km_per_pixel));
    return g;
}

uint64_t frame_seed(uint64_t seed, int64_t frame_index) {
    // splitmix64 step keeps per-frame streams independent of thread order
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(frame_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

void SynthParams::validate() const {
    if (rows < 8 || cols < 8) raise(ErrorCode::BadParams, "grid must be at least 8x8");
    if (km_per_pixel <= 0.0) raise(ErrorCode::BadParams, "km_per_pixel must be positive");
    if (period_hours <= 0.0) raise(ErrorCode::BadParams, "period_hours must be positive");
    if (duration_days < 2) raise(ErrorCode::BadParams, "duration_days must be at least 2");
    if (pulse_speed_km_per_hr < 0.0) raise(ErrorCode::BadParams, "pulse speed must be >= 0");
    if (ring_start_km <= 0.0 || ring_width_km < km_per_pixel)
        raise(ErrorCode::BadParams, "ring must start off-center and be at least one pixel wide");
    if (cool_amplitude < 0.0 || warm_amplitude < 0.0)
        raise(ErrorCode::BadParams, "amplitudes must be >= 0");
    if (sample_dt_minutes <= 0 || kLagMinutes % sample_dt_minutes != 0)
        raise(ErrorCode::BadParams, "sample_dt_minutes must divide 360");
    const double half_extent_km = (std::min(rows, cols) / 2 - 1) * km_per_pixel;
    const double max_reach = ring_start_km + pulse_speed_km_per_hr * period_hours + ring_width_km;
    if (max_reach > half_extent_km)
        raise(ErrorCode::BadParams, "ring sweep exceeds the image half-extent");
    if (salt_count > 0 && ring_start_km < 3.0 * km_per_pixel)
        raise(ErrorCode::BadParams, "hole too small to hold salt pixels");
}

int synth_hole_radius_px(const SynthParams& params, int64_t t_minutes) {
    const RingGeometry g = ring_at(params, t_minutes);
    return static_cast<int>(std::ceil(g.inner_km / params.km_per_pixel));
}

Grid synth_difference_field(const SynthParams& p, int64_t t_minutes) {
    const RingGeometry g = ring_at(p, t_minutes);
    Grid diff(p.rows, p.cols, 0.0, p.km_per_pixel);
    for (int i = 0; i < p.rows; ++i)
        for (int j = 0; j < p.cols; ++j) {
            const int d_px = std::max(std::abs(i - g.center_row), std::abs(j - g.center_col));
            const double d_km = d_px * p.km_per_pixel;
            if (d_km >= g.inner_km && d_km < g.outer_km)
                diff.at(i, j) = p.warm_amplitude;
            else if (d_km < g.inner_km)
                diff.at(i, j) = -p.cool_amplitude;
        }

    if (p.salt_count > 0 && p.warm_amplitude > 0.0) {
        // isolated warm pixels strictly inside the hole, pairwise Chebyshev
        // distance >= 2 and >= 2 from the ring so opening can remove them
        const int hole_px = static_cast<int>(std::ceil(g.inner_km / p.km_per_pixel));
        const int d_max = hole_px - 2;
        const int64_t frame_index = (t_minutes - kEpochStart) / p.sample_dt_minutes;
        std::mt19937_64 rng(frame_seed(p.rng_seed, frame_index));
        std::uniform_int_distribution<int> offset(-d_max, d_max);
        std::vector<std::pair<int, int>> placed;
        int attempts = 0;
        while (static_cast<int>(placed.size()) < p.salt_count && attempts < 10000) {
            ++attempts;
            const int di = offset(rng), dj = offset(rng);
            if (std::max(std::abs(di), std::abs(dj)) < 1) continue;  // keep the center clear
            bool ok = true;
            for (const auto& [pi, pj] : placed)
                if (std::max(std::abs(di - pi), std::abs(dj - pj)) < 2) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            placed.emplace_back(di, dj);
            diff.at(g.center_row + di, g.center_col + dj) = p.warm_amplitude;
        }
    }
    return diff;
}

FrameStack generate(const SynthParams& params) {
    params.validate();
    const int64_t span = static_cast<int64_t>(params.duration_days) * kMinutesPerDay + kLagMinutes;
    const int64_t frame_count = span / params.sample_dt_minutes + 1;
    const int64_t steps_per_lag = kLagMinutes / params.sample_dt_minutes;

    // S is accumulated along 6-hour chains so that S(t + 6 h) - S(t) equals
    // the designed difference field at t exactly.
    FrameStack stack;
    stack.km_per_pixel = params.km_per_pixel;
    stack.frames.resize(frame_count);
    for (int64_t k = 0; k < frame_count; ++k) {
        const int64_t t = kEpochStart + k * params.sample_dt_minutes;
        Grid field(params.rows, params.cols, kBaseBrightness, params.km_per_pixel);
        if (k >= steps_per_lag) {
            const Grid& prev = stack.frames[k - steps_per_lag].grid;
            const Grid increment =
                synth_difference_field(params, t - kLagMinutes);
            for (size_t i = 0; i < field.values.size(); ++i)
                field.values[i] = prev.values[i] + increment.values[i];
        }
        stack.frames[k] = Frame{t, std::move(field)};
    }
    return stack;
}

}  // namespace diurnal
