#pragma once

#include <cstdint>
#include <string>

namespace diurnal {

constexpr int64_t kMinutesPerDay = 1440;

/// Parses a frame timestamp of the form YYYYMMDDTHHMMZ into minutes since
/// the Unix epoch (UTC). Throws BadTimestamp on malformed input.
int64_t parse_frame_timestamp(const std::string& token);

/// Inverse of parse_frame_timestamp: minutes since epoch -> YYYYMMDDTHHMMZ.
std::string format_frame_timestamp(int64_t t_minutes);

/// ISO-8601 with seconds, e.g. 2007-09-02T00:00:00Z.
std::string format_iso8601(int64_t t_minutes);

/// UTC calendar day index (floor division by kMinutesPerDay).
inline int64_t utc_day(int64_t t_minutes) {
    int64_t d = t_minutes / kMinutesPerDay;
    if (t_minutes < 0 && t_minutes % kMinutesPerDay != 0) --d;
    return d;
}

}  // namespace diurnal
