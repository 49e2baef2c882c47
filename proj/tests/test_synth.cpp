#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "diurnal/grid_io.hpp"
#include "diurnal/pipeline.hpp"
#include "diurnal/synth.hpp"
#include "diurnal/timeutil.hpp"

using namespace diurnal;
namespace fs = std::filesystem;

namespace {

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generated differences equal the designed field") {
    SynthParams params;
    params.duration_days = 2;
    params.salt_count = 4;
    params.rng_seed = 19;
    const FrameStack stack = generate(params);
    const LagDifference lag = lag_difference(stack, 360);
    for (const auto& d : lag.diffs) {
        const Grid designed = synth_difference_field(params, d.t_minutes);
        CHECK(d.grid.values == designed.values);
    }
}

TEST_CASE("generation is deterministic under a fixed seed") {
    SynthParams params;
    params.duration_days = 2;
    params.salt_count = 5;
    params.rng_seed = 123;
    const FrameStack a = generate(params);
    const FrameStack b = generate(params);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.frames[i].t_minutes == b.frames[i].t_minutes);
        CHECK(a.frames[i].grid.values == b.frames[i].grid.values);
    }

    const fs::path dir1 = fs::temp_directory_path() / "diurnal_synth_det1";
    const fs::path dir2 = fs::temp_directory_path() / "diurnal_synth_det2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    write_stack(dir1, a, FrameFormat::Binary);
    write_stack(dir2, b, FrameFormat::Binary);
    for (const auto& entry : fs::directory_iterator(dir1)) {
        const fs::path other = dir2 / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(file_bytes(entry.path()) == file_bytes(other));
    }
}

TEST_CASE("per-frame max persistence follows the ring radius") {
    SynthParams params;
    params.duration_days = 2;
    const FrameStack stack = generate(params);
    const LagDifference lag = lag_difference(stack, 360);
    PipelineConfig cfg;
    for (size_t i = 0; i < lag.diffs.size(); i += 3) {
        const auto& d = lag.diffs[i];
        const double expected =
            synth_hole_radius_px(params, d.t_minutes) * params.km_per_pixel;
        CHECK(frame_max_persistence(d.grid, cfg).max_persistence_km == expected);
    }
}

TEST_CASE("ground-truth recovery for bin-aligned periods") {
    struct Case {
        double period;
        int days;
        double speed;
    };
    for (const Case& c : {Case{24.0, 4, 18.0}, Case{18.0, 3, 18.0}, Case{30.0, 5, 12.0}}) {
        SynthParams params;
        params.period_hours = c.period;
        params.duration_days = c.days;
        params.pulse_speed_km_per_hr = c.speed;
        const FrameStack stack = generate(params);
        PipelineConfig cfg;
        cfg.dt_minutes = params.sample_dt_minutes;
        const DetectionReport report = run(stack, cfg);
        CHECK(report.period_hours == doctest::Approx(c.period).epsilon(1e-12));
    }
}

TEST_CASE("a non-aligned period lands on the nearest bin") {
    SynthParams params;
    params.period_hours = 30.0;
    params.duration_days = 4;  // bins every 0.25 cycles/day; 0.8 rounds to 0.75
    params.pulse_speed_km_per_hr = 12.0;
    const FrameStack stack = generate(params);
    PipelineConfig cfg;
    cfg.dt_minutes = params.sample_dt_minutes;
    const DetectionReport report = run(stack, cfg);
    CHECK(report.dominant_freq_cycles_per_day == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("zero amplitude produces a constant stack and NoSignal") {
    SynthParams params;
    params.duration_days = 2;
    params.warm_amplitude = 0.0;
    params.cool_amplitude = 0.0;
    const FrameStack stack = generate(params);
    for (const auto& f : stack.frames)
        for (double v : f.grid.values) CHECK(v == f.grid.values[0]);
    PipelineConfig cfg;
    cfg.dt_minutes = params.sample_dt_minutes;
    try {
        run(stack, cfg);
        FAIL("expected NoSignal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSignal);
    }
}

TEST_CASE("parameter validation") {
    SynthParams p;
    p.period_hours = 0.0;
    CHECK_THROWS_AS(generate(p), Error);

    p = SynthParams{};
    p.duration_days = 1;
    CHECK_THROWS_AS(generate(p), Error);

    p = SynthParams{};
    p.sample_dt_minutes = 7;  // does not divide 360
    CHECK_THROWS_AS(generate(p), Error);

    p = SynthParams{};
    p.pulse_speed_km_per_hr = 100.0;  // sweeps past the image edge
    CHECK_THROWS_AS(generate(p), Error);

    p = SynthParams{};
    p.salt_count = 1;
    p.ring_start_km = 8.0;  // hole too small for isolated salt
    CHECK_THROWS_AS(generate(p), Error);
}

TEST_CASE("frames start at midnight and cover the duration plus one lag") {
    SynthParams params;
    params.duration_days = 3;
    const FrameStack stack = generate(params);
    CHECK(stack.frames.front().t_minutes % kMinutesPerDay == 0);
    const int64_t span = stack.frames.back().t_minutes - stack.frames.front().t_minutes;
    CHECK(span == 3 * kMinutesPerDay + 360);
    stack.validate();
}
