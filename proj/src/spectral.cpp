#include "diurnal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "diurnal/timeutil.hpp"

namespace diurnal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

// In-place iterative radix-2 transform, sign = -1 forward / +1 inverse
// (inverse unscaled).
void fft_radix2(std::vector<std::complex<double>>& a, double sign) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const std::complex<double> wlen = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& input,
                                            double sign) {
    const size_t n = input.size();
    if (is_power_of_two(n)) {
        std::vector<std::complex<double>> a = input;
        fft_radix2(a, sign);
        return a;
    }
    // Defining sum; the angle is reduced mod N before evaluation.
    std::vector<std::complex<double>> out(n);
    for (size_t bin = 0; bin < n; ++bin) {
        std::complex<double> acc{0.0, 0.0};
        for (size_t k = 0; k < n; ++k) {
            const size_t m = (bin * k) % n;
            acc += input[k] * std::polar(1.0, sign * kTwoPi * static_cast<double>(m) /
                                                  static_cast<double>(n));
        }
        out[bin] = acc;
    }
    return out;
}

int64_t bin_of_frequency(const Spectrum& s, double freq) {
    const size_t n = s.size();
    for (size_t b = 1; b <= n / 2; ++b)
        if (s.freq_bins[b] == freq) return static_cast<int64_t>(b);
    return -1;
}

}  // namespace

UniformSeries resample_linear(const TimeSeries& ts, int64_t dt_minutes) {
    if (ts.size() < 2) raise(ErrorCode::TooFewSamples, "need at least 2 samples to resample");
    if (dt_minutes <= 0) raise(ErrorCode::BadParams, "dt must be positive");
    for (size_t i = 1; i < ts.size(); ++i)
        if (ts.samples[i].t_minutes <= ts.samples[i - 1].t_minutes)
            raise(ErrorCode::BadTimestamp, "series times not strictly increasing");

    UniformSeries out;
    out.t0_minutes = ts.samples.front().t_minutes;
    out.dt_minutes = dt_minutes;
    const int64_t t_end = ts.samples.back().t_minutes;
    size_t hi = 1;
    for (int64_t t = out.t0_minutes; t <= t_end; t += dt_minutes) {
        while (ts.samples[hi].t_minutes < t) ++hi;
        const auto& b = ts.samples[hi];
        const auto& a = ts.samples[hi - 1];
        if (t == a.t_minutes) {
            out.values.push_back(a.value);
        } else if (t == b.t_minutes) {
            out.values.push_back(b.value);
        } else {
            const double w = static_cast<double>(t - a.t_minutes) /
                             static_cast<double>(b.t_minutes - a.t_minutes);
            out.values.push_back(a.value + w * (b.value - a.value));
        }
    }
    if (out.values.size() < 2) raise(ErrorCode::TooFewSamples, "resampled grid has fewer than 2 points");
    return out;
}

UniformSeries truncate_full_days(const UniformSeries& u) {
    if (u.values.empty()) raise(ErrorCode::NoCompleteDays, "empty series");

    // A day is covered when every expected grid slot in its closed span
    // [00:00, 24:00] (including the closing midnight) is present; the series
    // is contiguous, so the first and last expected slots decide.
    auto day_covered = [&](int64_t day) {
        const int64_t day_start = day * kMinutesPerDay;
        const int64_t day_end = day_start + kMinutesPerDay;
        const int64_t k_first = ceil_div(day_start - u.t0_minutes, u.dt_minutes);
        const int64_t k_last = floor_div(day_end - u.t0_minutes, u.dt_minutes);
        if (k_first > k_last) return false;  // no expected slot in the day
        return k_first >= 0 && k_last < static_cast<int64_t>(u.size());
    };

    // Covered days are necessarily contiguous, so the kept samples stay on
    // the original grid. Samples at a closing midnight belong to the next
    // day and survive only when that day is covered too.
    std::vector<double> kept;
    int64_t kept_start = 0;
    for (size_t k = 0; k < u.size(); ++k) {
        const int64_t t = u.time_at(k);
        if (!day_covered(utc_day(t))) continue;
        if (kept.empty()) kept_start = t;
        kept.push_back(u.values[k]);
    }
    if (kept.empty()) raise(ErrorCode::NoCompleteDays, "no fully covered UTC day");
    UniformSeries out;
    out.t0_minutes = kept_start;
    out.dt_minutes = u.dt_minutes;
    out.values = std::move(kept);
    return out;
}

TimeSeries truncate_full_days(const TimeSeries& ts) {
    if (ts.empty()) raise(ErrorCode::NoCompleteDays, "empty series");
    const int64_t t_first = ts.samples.front().t_minutes;
    const int64_t t_last = ts.samples.back().t_minutes;
    auto day_covered = [&](int64_t day) {
        return t_first <= day * kMinutesPerDay && t_last >= (day + 1) * kMinutesPerDay;
    };
    TimeSeries out;
    for (const auto& s : ts.samples)
        if (day_covered(utc_day(s.t_minutes))) out.samples.push_back(s);
    if (out.empty()) raise(ErrorCode::NoCompleteDays, "no fully covered UTC day");
    return out;
}

Spectrum dft(const UniformSeries& u) {
    const size_t n = u.size();
    if (n < 2) raise(ErrorCode::TooFewSamples, "DFT needs at least 2 samples");
    std::vector<std::complex<double>> input(n);
    for (size_t k = 0; k < n; ++k) input[k] = {u.values[k], 0.0};
    Spectrum s;
    s.t0_minutes = u.t0_minutes;
    s.dt_minutes = u.dt_minutes;
    s.coefficients = transform(input, -1.0);
    s.freq_bins.resize(n);
    const double dt_days = static_cast<double>(u.dt_minutes) / static_cast<double>(kMinutesPerDay);
    const double df = 1.0 / (static_cast<double>(n) * dt_days);
    for (size_t bin = 0; bin < n; ++bin) {
        const double signed_bin = bin <= n / 2 ? static_cast<double>(bin)
                                               : static_cast<double>(bin) - static_cast<double>(n);
        s.freq_bins[bin] = signed_bin * df;
    }
    return s;
}

std::vector<std::complex<double>> inverse_dft(const std::vector<std::complex<double>>& coeffs) {
    std::vector<std::complex<double>> out = transform(coeffs, +1.0);
    const double scale = 1.0 / static_cast<double>(coeffs.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<std::pair<double, double>> power_spectrum(const Spectrum& s) {
    std::vector<std::pair<double, double>> out;
    for (size_t bin = 1; bin <= s.size() / 2; ++bin)
        out.emplace_back(s.freq_bins[bin], s.power(bin));
    return out;
}

double dominant_frequency(const Spectrum& s) {
    if (s.size() < 4) raise(ErrorCode::TooFewSamples, "need at least 4 samples for a peak");
    size_t best_bin = 0;
    double best_power = 0.0;
    for (size_t bin = 1; bin <= s.size() / 2; ++bin) {
        const double p = s.power(bin);
        if (p > best_power) {
            best_power = p;
            best_bin = bin;
        }
    }
    if (best_bin == 0 || best_power <= 0.0)
        raise(ErrorCode::NoSignal, "all positive-frequency power is zero");
    return s.freq_bins[best_bin];
}

double period_hours(double freq_cycles_per_day) {
    if (!(freq_cycles_per_day > 0.0))
        raise(ErrorCode::NonPositiveFrequency, "frequency must be positive");
    return 24.0 / freq_cycles_per_day;
}

UniformSeries reconstruct(const Spectrum& s, double freq_cycles_per_day) {
    const size_t n = s.size();
    const int64_t bin = bin_of_frequency(s, freq_cycles_per_day);
    if (bin < 0)
        raise(ErrorCode::BinNotFound,
              "no positive bin at " + std::to_string(freq_cycles_per_day) + " cycles/day");
    std::vector<std::complex<double>> kept(n, {0.0, 0.0});
    kept[0] = s.coefficients[0];
    kept[static_cast<size_t>(bin)] = s.coefficients[static_cast<size_t>(bin)];
    const size_t mirror = (n - static_cast<size_t>(bin)) % n;
    kept[mirror] = s.coefficients[mirror];
    const std::vector<std::complex<double>> values = inverse_dft(kept);

    double max_abs = 0.0, max_imag = 0.0;
    for (const auto& v : values) {
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-9 * std::max(1.0, max_abs))
        throw std::logic_error("reconstruct: imaginary residue above tolerance");

    UniformSeries out;
    out.t0_minutes = s.t0_minutes;
    out.dt_minutes = s.dt_minutes;
    out.values.resize(n);
    for (size_t k = 0; k < n; ++k) out.values[k] = values[k].real();
    return out;
}

void write_series_csv(std::ostream& out, const UniformSeries& u) {
    out << "timestamp_iso8601,value_km\n";
    char buf[48];
    for (size_t k = 0; k < u.size(); ++k) {
        std::snprintf(buf, sizeof(buf), ",%.9g\n", u.values[k]);
        out << format_iso8601(u.time_at(k)) << buf;
    }
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
    out << "timestamp_iso8601,value_km\n";
    char buf[48];
    for (const auto& s : ts.samples) {
        std::snprintf(buf, sizeof(buf), ",%.9g\n", s.value);
        out << format_iso8601(s.t_minutes) << buf;
    }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "freq_cycles_per_day,power\n";
    char buf[80];
    for (const auto& [freq, power] : power_spectrum(s)) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", freq, power);
        out << buf;
    }
}

}  // namespace diurnal
