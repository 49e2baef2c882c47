#include "diurnal/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "diurnal/timeutil.hpp"

namespace diurnal {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 360;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 20;
constexpr int kMarginBottom = 40;

std::string polyline_points(const UniformSeries& s, int64_t t_min, int64_t t_max, double v_min,
                            double v_max) {
    const double x_span = static_cast<double>(std::max<int64_t>(1, t_max - t_min));
    const double v_span = std::max(1e-12, v_max - v_min);
    std::string pts;
    char buf[64];
    for (size_t k = 0; k < s.size(); ++k) {
        const double x = kMarginLeft + (kWidth - kMarginLeft - kMarginRight) *
                                           (static_cast<double>(s.time_at(k) - t_min) / x_span);
        const double y = kHeight - kMarginBottom -
                         (kHeight - kMarginTop - kMarginBottom) * ((s.values[k] - v_min) / v_span);
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
        pts += buf;
    }
    if (!pts.empty()) pts.pop_back();
    return pts;
}

}  // namespace

void write_series_svg(std::ostream& out, const UniformSeries& series,
                      const UniformSeries* overlay, const std::string& y_label) {
    const int64_t t_min = series.t0_minutes;
    const int64_t t_max = series.time_at(series.size() - 1);
    double v_min = series.values.empty() ? 0.0 : series.values[0];
    double v_max = v_min;
    auto stretch = [&](const UniformSeries& s) {
        for (double v : s.values) {
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    };
    stretch(series);
    if (overlay) stretch(*overlay);
    if (v_max == v_min) v_max = v_min + 1.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // vertical gridlines at UTC day boundaries
    const double x_span = static_cast<double>(std::max<int64_t>(1, t_max - t_min));
    for (int64_t day = utc_day(t_min); day * kMinutesPerDay <= t_max; ++day) {
        const int64_t t = day * kMinutesPerDay;
        if (t < t_min) continue;
        const double x = kMarginLeft + (kWidth - kMarginLeft - kMarginRight) *
                                           (static_cast<double>(t - t_min) / x_span);
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%d\" x2=\"%.2f\" y2=\"%d\" stroke=\"#bbbbbb\" "
                      "stroke-width=\"1\"/>\n",
                      x, kMarginTop, x, kHeight - kMarginBottom);
        out << buf;
        out << "<text x=\"" << x + 3 << "\" y=\"" << kHeight - kMarginBottom + 16
            << "\" font-size=\"11\" fill=\"#555555\">" << format_iso8601(t).substr(0, 10)
            << "</text>\n";
    }

    out << "<text x=\"12\" y=\"" << (kHeight / 2)
        << "\" font-size=\"12\" fill=\"#333333\" transform=\"rotate(-90 12 " << (kHeight / 2)
        << ")\">" << y_label << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\""
        << polyline_points(series, t_min, t_max, v_min, v_max) << "\"/>\n";
    if (overlay && !overlay->values.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#d07030\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 4\" points=\""
            << polyline_points(*overlay, t_min, t_max, v_min, v_max) << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace diurnal
