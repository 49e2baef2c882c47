#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "diurnal/error.hpp"

namespace diurnal {

/// Timestamped scalar samples, strictly increasing in t.
struct TimeSeries {
    struct Sample {
        int64_t t_minutes = 0;
        double value = 0.0;
    };
    std::vector<Sample> samples;

    size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

/// Uniformly sampled series: values[k] sits at t0 + k * dt.
struct UniformSeries {
    int64_t t0_minutes = 0;
    int64_t dt_minutes = 0;
    std::vector<double> values;

    size_t size() const { return values.size(); }
    int64_t time_at(size_t k) const { return t0_minutes + static_cast<int64_t>(k) * dt_minutes; }
};

/// DFT of a UniformSeries. freq_bins are in cycles/day: bin n holds
/// n / (N * dt_days) for n <= N/2 and the mirrored negative frequency above.
struct Spectrum {
    int64_t t0_minutes = 0;
    int64_t dt_minutes = 0;
    std::vector<std::complex<double>> coefficients;
    std::vector<double> freq_bins;

    size_t size() const { return coefficients.size(); }
    double power(size_t n) const { return std::norm(coefficients[n]); }
};

/// Linear interpolation onto the grid t0 + k*dt, t0 = first sample time.
/// Grid points at sample times reproduce the sample values exactly.
UniformSeries resample_linear(const TimeSeries& ts, int64_t dt_minutes);

/// Keeps only samples belonging to fully covered UTC days. A day counts as
/// fully covered when every expected grid slot in [00:00, 24:00] of that day
/// (including the closing midnight) is present; retained samples are the
/// ones in [00:00, 24:00) of covered days. Throws NoCompleteDays when
/// nothing survives.
UniformSeries truncate_full_days(const UniformSeries& u);

/// TimeSeries variant: a day is covered when samples bracket it (one at or
/// before 00:00 and one at or after the next midnight).
TimeSeries truncate_full_days(const TimeSeries& ts);

/// F_n = sum_k f(t_k) e^{-2 pi i n k / N}. Radix-2 FFT for power-of-two N,
/// the defining sum otherwise.
Spectrum dft(const UniformSeries& u);

/// Inverse transform; exact round trip with dft up to rounding.
std::vector<std::complex<double>> inverse_dft(const std::vector<std::complex<double>>& coeffs);

/// Positive-frequency bins 1..floor(N/2) as (cycles/day, |F_n|^2).
std::vector<std::pair<double, double>> power_spectrum(const Spectrum& s);

/// Frequency of the maximum-power positive bin (DC excluded); ties break
/// toward the lowest frequency. Throws NoSignal when all positive bins have
/// zero power.
double dominant_frequency(const Spectrum& s);

/// 24 / f: period in hours for a frequency in cycles/day.
double period_hours(double freq_cycles_per_day);

/// Inverse DFT with every coefficient zeroed except DC, the bin at f and its
/// conjugate mirror. The imaginary residue must vanish to 1e-9 and is then
/// dropped. Throws BinNotFound when f matches no positive bin.
UniformSeries reconstruct(const Spectrum& s, double freq_cycles_per_day);

/// CSV exports: "timestamp_iso8601,value_km" / "freq_cycles_per_day,power".
void write_series_csv(std::ostream& out, const UniformSeries& u);
void write_series_csv(std::ostream& out, const TimeSeries& ts);
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace diurnal
