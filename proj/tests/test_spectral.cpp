#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "diurnal/spectral.hpp"
#include "diurnal/timeutil.hpp"
#include "oracles.hpp"

using namespace diurnal;

namespace {

constexpr int64_t kDay = kMinutesPerDay;

UniformSeries uniform(int64_t t0, int64_t dt, std::vector<double> values) {
    UniformSeries u;
    u.t0_minutes = t0;
    u.dt_minutes = dt;
    u.values = std::move(values);
    return u;
}

UniformSeries sampled_sinusoid(double period_hours, int64_t dt, size_t n, double mean = 0.0) {
    UniformSeries u;
    u.t0_minutes = 0;
    u.dt_minutes = dt;
    for (size_t k = 0; k < n; ++k) {
        const double t_hours = static_cast<double>(k * dt) / 60.0;
        u.values.push_back(mean + std::cos(2.0 * std::numbers::pi * t_hours / period_hours));
    }
    return u;
}

double rel_err(const std::complex<double>& a, const std::complex<double>& b, double scale) {
    return std::abs(a - b) / std::max(1.0, scale);
}

}  // namespace

TEST_CASE("resample_linear interpolates onto the grid") {
    TimeSeries ts;
    ts.samples = {{0, 0.0}, {60, 10.0}, {180, 30.0}};
    const UniformSeries u = resample_linear(ts, 60);
    CHECK(u.t0_minutes == 0);
    CHECK(u.values == std::vector<double>{0.0, 10.0, 20.0, 30.0});
}

TEST_CASE("resample_linear is the identity on uniform input") {
    TimeSeries ts;
    for (int k = 0; k < 6; ++k) ts.samples.push_back({k * 90, k * 1.5});
    const UniformSeries u = resample_linear(ts, 90);
    REQUIRE(u.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(u.values[k] == ts.samples[k].value);
}

TEST_CASE("resample_linear needs two samples") {
    TimeSeries ts;
    ts.samples = {{0, 1.0}};
    try {
        resample_linear(ts, 60);
        FAIL("expected TooFewSamples");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewSamples);
    }
}

TEST_CASE("truncate_full_days keeps only fully covered days") {
    // 3-hourly from day1 06:00 through day3 21:00: day1 misses its first
    // slots, day3 misses its closing midnight, so only day2 survives
    std::vector<double> values;
    for (int64_t t = 6 * 60; t <= 2 * kDay + 21 * 60; t += 180)
        values.push_back(static_cast<double>(t));
    const UniformSeries u = uniform(6 * 60, 180, values);
    const UniformSeries kept = truncate_full_days(u);
    CHECK(kept.t0_minutes == kDay);
    REQUIRE(kept.size() == 8);
    CHECK(kept.values.front() == static_cast<double>(kDay));
    CHECK(kept.values.back() == static_cast<double>(kDay + 21 * 60));
}

TEST_CASE("truncate_full_days keeps a series of exact days plus closing midnight") {
    // day1 00:00 .. day3 00:00: days 1 and 2 are covered; the closing
    // midnight belongs to day 3 and is dropped
    std::vector<double> values;
    for (int64_t t = 0; t <= 2 * kDay; t += 180) values.push_back(static_cast<double>(t));
    const UniformSeries kept = truncate_full_days(uniform(0, 180, values));
    CHECK(kept.t0_minutes == 0);
    CHECK(kept.size() == 16);  // 8 slots per day, two days, closing slot dropped
}

TEST_CASE("truncate_full_days rejects a partial afternoon") {
    const UniformSeries u = uniform(13 * 60, 60, {1, 2, 3, 4, 5});
    try {
        truncate_full_days(u);
        FAIL("expected NoCompleteDays");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoCompleteDays);
    }
}

TEST_CASE("truncate_full_days on a raw time series uses bracketing samples") {
    TimeSeries ts;
    for (int64_t t = 6 * 60; t <= 2 * kDay + 21 * 60; t += 180) ts.samples.push_back({t, 1.0});
    const TimeSeries kept = truncate_full_days(ts);
    REQUIRE(!kept.empty());
    CHECK(utc_day(kept.samples.front().t_minutes) == 1);
    CHECK(utc_day(kept.samples.back().t_minutes) == 1);
}

TEST_CASE("dft of a constant concentrates at DC") {
    const Spectrum s = dft(uniform(0, 60, {1, 1, 1, 1}));
    CHECK(std::abs(s.coefficients[0] - std::complex<double>{4.0, 0.0}) < 1e-12);
    for (size_t bin = 1; bin < 4; ++bin) CHECK(std::abs(s.coefficients[bin]) < 1e-12);
}

TEST_CASE("dft of one cosine cycle over four samples") {
    const Spectrum s = dft(uniform(0, 60, {1, 0, -1, 0}));
    CHECK(std::abs(s.coefficients[0]) < 1e-12);
    CHECK(std::abs(s.coefficients[1] - std::complex<double>{2.0, 0.0}) < 1e-12);
    CHECK(std::abs(s.coefficients[2]) < 1e-12);
    CHECK(std::abs(s.coefficients[3] - std::complex<double>{2.0, 0.0}) < 1e-12);

    const auto power = power_spectrum(s);
    REQUIRE(power.size() == 2);
    CHECK(power[0].second == doctest::Approx(4.0));
    CHECK(power[1].second == doctest::Approx(0.0));
}

TEST_CASE("a 24-hour cosine sampled 3-hourly peaks at 1 cycle/day") {
    const UniformSeries u = sampled_sinusoid(24.0, 180, 8);
    const Spectrum s = dft(u);
    CHECK(s.freq_bins[1] == 1.0);
    CHECK(dominant_frequency(s) == 1.0);
    const auto power = power_spectrum(s);
    CHECK(power[0].second == doctest::Approx(16.0));  // (N/2)^2
}

TEST_CASE("dft matches the defining sum") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (size_t n : {8ul, 64ul, 1024ul, 12ul, 96ul}) {
        std::vector<double> values(n);
        for (double& v : values) v = val(rng);
        const Spectrum s = dft(uniform(0, 180, values));
        const auto expected = oracle::naive_dft(values);
        double scale = 0.0;
        for (const auto& c : expected) scale = std::max(scale, std::abs(c));
        for (size_t bin = 0; bin < n; ++bin)
            CHECK(rel_err(s.coefficients[bin], expected[bin], scale) < 1e-9);
    }
}

TEST_CASE("Parseval and the inverse round trip") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (size_t n : {16ul, 100ul}) {
        std::vector<double> values(n);
        for (double& v : values) v = val(rng);
        const Spectrum s = dft(uniform(0, 60, values));

        double time_energy = 0.0, freq_energy = 0.0;
        for (double v : values) time_energy += v * v;
        for (const auto& c : s.coefficients) freq_energy += std::norm(c);
        CHECK(time_energy == doctest::Approx(freq_energy / static_cast<double>(n)).epsilon(1e-9));

        const auto back = inverse_dft(s.coefficients);
        for (size_t k = 0; k < n; ++k) {
            CHECK(std::abs(back[k].real() - values[k]) < 1e-9);
            CHECK(std::abs(back[k].imag()) < 1e-9);
        }
    }
}

TEST_CASE("hermitian symmetry of the power spectrum for real input") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::vector<double> values(10);
    for (double& v : values) v = val(rng);
    const Spectrum s = dft(uniform(0, 60, values));
    for (size_t bin = 1; bin < values.size(); ++bin)
        CHECK(s.power(bin) == doctest::Approx(s.power(values.size() - bin)).epsilon(1e-9));
}

TEST_CASE("dominant_frequency excludes DC and breaks ties low") {
    // constant series: nothing but DC
    try {
        dominant_frequency(dft(uniform(0, 180, {5, 5, 5, 5, 5, 5, 5, 5})));
        FAIL("expected NoSignal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSignal);
    }

    // an impulse has bit-identical power in every bin, so the tie must
    // resolve to the lowest frequency
    const Spectrum s = dft(uniform(0, 180, {2, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(s.power(1) == s.power(2));
    CHECK(dominant_frequency(s) == 1.0);
}

TEST_CASE("dominant_frequency is invariant under shift and positive scaling") {
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    UniformSeries u = sampled_sinusoid(24.0, 180, 16);
    for (double& v : u.values) v += 0.2 * val(rng);
    const double f = dominant_frequency(dft(u));
    UniformSeries shifted = u, scaled = u;
    for (double& v : shifted.values) v += 100.0;
    for (double& v : scaled.values) v *= 7.5;
    CHECK(dominant_frequency(dft(shifted)) == f);
    CHECK(dominant_frequency(dft(scaled)) == f);
}

TEST_CASE("period_hours converts cycles per day") {
    CHECK(period_hours(1.0) == 24.0);
    CHECK(period_hours(0.976) == doctest::Approx(24.59).epsilon(1e-3));
    CHECK(period_hours(0.979) == doctest::Approx(24.51).epsilon(1e-3));
    CHECK_THROWS_AS(period_hours(0.0), Error);
    CHECK_THROWS_AS(period_hours(-1.0), Error);
}

TEST_CASE("reconstruct projects onto the chosen bin") {
    const UniformSeries u = sampled_sinusoid(24.0, 180, 16, 3.0);
    const Spectrum s = dft(u);
    const double f = dominant_frequency(s);
    const UniformSeries r = reconstruct(s, f);
    REQUIRE(r.size() == u.size());
    for (size_t k = 0; k < u.size(); ++k) CHECK(std::abs(r.values[k] - u.values[k]) < 1e-9);
}

TEST_CASE("reconstruct keeps the mean for a constant series") {
    const Spectrum s = dft(uniform(0, 180, {2, 2, 2, 2, 2, 2, 2, 2}));
    const UniformSeries r = reconstruct(s, s.freq_bins[3]);
    for (double v : r.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reconstruct splits a two-tone signal") {
    // cos at bin 1 plus cos at bin 3; keeping bin 1 leaves the bin-1 tone
    // plus the mean. Expected values from the naive inverse sum.
    const size_t n = 16;
    UniformSeries u;
    u.t0_minutes = 0;
    u.dt_minutes = 180;
    for (size_t k = 0; k < n; ++k) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        u.values.push_back(1.5 + std::cos(x) + std::cos(3.0 * x));
    }
    const Spectrum s = dft(u);
    const UniformSeries r = reconstruct(s, s.freq_bins[1]);

    auto kept = s.coefficients;
    for (size_t bin = 0; bin < n; ++bin)
        if (bin != 0 && bin != 1 && bin != n - 1) kept[bin] = {0.0, 0.0};
    const auto expected = oracle::naive_inverse_dft(kept);
    for (size_t k = 0; k < n; ++k) {
        CHECK(std::abs(r.values[k] - expected[k].real()) < 1e-9);
        CHECK(std::abs(r.values[k] - (1.5 + std::cos(2.0 * std::numbers::pi *
                                                     static_cast<double>(k) /
                                                     static_cast<double>(n)))) < 1e-9);
    }
}

TEST_CASE("reconstruct rejects frequencies off the grid") {
    const Spectrum s = dft(sampled_sinusoid(24.0, 180, 8));
    try {
        reconstruct(s, 0.37);
        FAIL("expected BinNotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BinNotFound);
    }
}

TEST_CASE("the detected frequency is the bin nearest the true period") {
    // 26-hour sinusoid on a 4-day window: 24/26 cycles/day sits between the
    // 0.75 and 1.0 bins, nearer 1.0
    const UniformSeries u = sampled_sinusoid(26.0, 180, 32);
    CHECK(dominant_frequency(dft(u)) == 1.0);

    // 30-hour sinusoid on a 5-day window sits exactly on a bin
    const UniformSeries v = sampled_sinusoid(30.0, 180, 40);
    CHECK(period_hours(dominant_frequency(dft(v))) == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("csv exports") {
    std::ostringstream out;
    write_series_csv(out, uniform(0, 180, {1.5, 2.0}));
    CHECK(out.str() ==
          "timestamp_iso8601,value_km\n1970-01-01T00:00:00Z,1.5\n1970-01-01T03:00:00Z,2\n");

    std::ostringstream sp;
    write_spectrum_csv(sp, dft(uniform(0, 360, {1, 0, -1, 0})));
    CHECK(sp.str() == "freq_cycles_per_day,power\n1,4\n2,0\n");
}
