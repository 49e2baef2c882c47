#include "diurnal/timeutil.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

#include "diurnal/error.hpp"

namespace diurnal {

namespace {

int parse_digits(const std::string& s, size_t pos, size_t len) {
    int v = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            raise(ErrorCode::BadTimestamp, "non-digit in timestamp '" + s + "'");
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace

int64_t parse_frame_timestamp(const std::string& token) {
    // YYYYMMDDTHHMMZ
    if (token.size() != 14 || token[8] != 'T' || token[13] != 'Z')
        raise(ErrorCode::BadTimestamp, "expected YYYYMMDDTHHMMZ, got '" + token + "'");
    const int y = parse_digits(token, 0, 4);
    const int mo = parse_digits(token, 4, 2);
    const int d = parse_digits(token, 6, 2);
    const int h = parse_digits(token, 9, 2);
    const int mi = parse_digits(token, 11, 2);
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59)
        raise(ErrorCode::BadTimestamp, "invalid calendar date/time '" + token + "'");
    const auto days_since_epoch = sys_days{ymd}.time_since_epoch();
    return duration_cast<minutes>(days_since_epoch).count() + h * 60 + mi;
}

std::string format_frame_timestamp(int64_t t_minutes) {
    using namespace std::chrono;
    const sys_days sd{floor<days>(minutes{t_minutes})};
    const year_month_day ymd{sd};
    const int64_t rem = t_minutes - duration_cast<minutes>(sd.time_since_epoch()).count();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d%02u%02uT%02d%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 60), static_cast<int>(rem % 60));
    return buf;
}

std::string format_iso8601(int64_t t_minutes) {
    using namespace std::chrono;
    const sys_days sd{floor<days>(minutes{t_minutes})};
    const year_month_day ymd{sd};
    const int64_t rem = t_minutes - duration_cast<minutes>(sd.time_since_epoch()).count();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:00Z", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 60), static_cast<int>(rem % 60));
    return buf;
}

}  // namespace diurnal
