#pragma once

#include <cstdint>

#include "diurnal/grid.hpp"

namespace diurnal {

/// Parameters for the synthetic pulse generator. The generated brightness
/// fields are built so that their six-hour differences contain a warm
/// annulus (above the default threshold) enclosing a cool disk; the annulus
/// radius advances at pulse_speed_km_per_hr and resets every period_hours.
struct SynthParams {
    int rows = 128;
    int cols = 128;
    double km_per_pixel = 8.0;
    double period_hours = 24.0;
    double pulse_speed_km_per_hr = 18.0;
    double ring_start_km = 40.0;
    double ring_width_km = 16.0;
    double cool_amplitude = 40.0;   // depth of the cool disk in the difference
    double warm_amplitude = 120.0;  // annulus height in the difference
    int64_t sample_dt_minutes = 180;
    int duration_days = 4;
    int salt_count = 0;  // isolated warm pixels per frame, inside the hole
    uint64_t rng_seed = 0;
    double drift_dx_km_per_hr = 0.0;
    double drift_dy_km_per_hr = 0.0;

    void validate() const;  // throws BadParams
};

/// Deterministic synthetic stack. Frames start at UTC midnight and extend
/// one lag (6 h) past duration_days so the difference series covers exactly
/// duration_days full days.
FrameStack generate(const SynthParams& params);

/// The designed difference field at time t (what S(t+6h) - S(t) works out
/// to): warm annulus, cool interior disk, optional salt pixels. Exposed for
/// tests that need per-frame ground truth.
Grid synth_difference_field(const SynthParams& params, int64_t t_minutes);

/// Chebyshev inner ring radius in pixels at time t; the noise-free max
/// persistence of the difference frame equals this times km_per_pixel.
int synth_hole_radius_px(const SynthParams& params, int64_t t_minutes);

}  // namespace diurnal
