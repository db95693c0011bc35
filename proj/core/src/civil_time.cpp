#include "polarscope/civil_time.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace polarscope::civil {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace

// Howard Hinnant's proleptic Gregorian conversion.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                     static_cast<int>(d)};
}

int weekday(std::int64_t days) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    std::int64_t w = (days + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

bool valid_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr std::array<int, 12> len = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
    int n = len[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) n = 29;
    return d <= n;
}

std::optional<CivilDate> parse_date(std::string_view s) {
    int y, m, d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_int(s, 0, 4, y) || !parse_int(s, 5, 2, m) || !parse_int(s, 8, 2, d))
        return std::nullopt;
    if (!valid_date(y, m, d)) return std::nullopt;
    return CivilDate{y, m, d};
}

std::string format_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::optional<std::int64_t> parse_rfc3339(std::string_view s) {
    // Minimum: "YYYY-MM-DDTHH:MM:SSZ" (20 chars).
    if (s.size() < 20) return std::nullopt;
    int y, mo, d, h, mi, se;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':')
        return std::nullopt;
    if (!parse_int(s, 0, 4, y) || !parse_int(s, 5, 2, mo) || !parse_int(s, 8, 2, d) ||
        !parse_int(s, 11, 2, h) || !parse_int(s, 14, 2, mi) || !parse_int(s, 17, 2, se))
        return std::nullopt;
    if (!valid_date(y, mo, d) || h > 23 || mi > 59 || se > 60) return std::nullopt;
    if (se == 60) se = 59; // fold leap seconds

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') { ++pos; ++digits; }
        if (digits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;

    std::int64_t offset = 0;
    const char c = s[pos];
    if (c == 'Z' || c == 'z') {
        if (pos + 1 != s.size()) return std::nullopt;
    } else if (c == '+' || c == '-') {
        int oh, om;
        if (pos + 6 != s.size() || s[pos + 3] != ':') return std::nullopt;
        if (!parse_int(s, pos + 1, 2, oh) || !parse_int(s, pos + 4, 2, om)) return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset = (c == '+' ? 1 : -1) * (oh * 3600LL + om * 60LL);
    } else {
        return std::nullopt;
    }

    const std::int64_t days = days_from_civil(y, mo, d);
    return days * kSecondsPerDay + h * 3600LL + mi * 60LL + se - offset;
}

std::string format_rfc3339(std::int64_t t) {
    std::int64_t days = t / kSecondsPerDay;
    std::int64_t sod = t % kSecondsPerDay;
    if (sod < 0) { sod += kSecondsPerDay; --days; }
    const CivilDate d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month,
                  d.day, static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

TimeZone TimeZone::utc() { return TimeZone("UTC", Rule::fixed, 0); }

std::optional<TimeZone> TimeZone::parse(std::string_view id) {
    if (id == "UTC" || id == "utc") return utc();
    if (id == "Europe/Helsinki")
        return TimeZone("Europe/Helsinki", Rule::eu_helsinki, 2 * 3600);
    if (id.size() == 9 && id.substr(0, 3) == "UTC" && (id[3] == '+' || id[3] == '-') &&
        id[6] == ':') {
        int h, m;
        if (parse_int(id, 4, 2, h) && parse_int(id, 7, 2, m) && h <= 23 && m <= 59) {
            std::int64_t off = h * 3600LL + m * 60LL;
            if (id[3] == '-') off = -off;
            return TimeZone(std::string(id), Rule::fixed, off);
        }
    }
    return std::nullopt;
}

std::string TimeZone::supported_ids_hint() {
    return "supported timezone ids: UTC, Europe/Helsinki, UTC+HH:MM, UTC-HH:MM";
}

namespace {

// Last Sunday of the given month, as a day number.
std::int64_t last_sunday(int year, int month) {
    static constexpr std::array<int, 12> len = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
    int day = len[month - 1];
    std::int64_t z = days_from_civil(year, month, day);
    // weekday(): 6 = Sunday
    const int w = weekday(z);
    return z - ((w + 1) % 7);
}

} // namespace

std::int64_t TimeZone::offset_at(std::int64_t t) const {
    if (rule_ == Rule::fixed) return base_offset_;
    // EU rule: DST between last Sunday of March and last Sunday of
    // October, transitions at 01:00 UTC.
    const CivilDate d = civil_from_days(t >= 0 ? t / kSecondsPerDay
                                               : (t - kSecondsPerDay + 1) / kSecondsPerDay);
    const std::int64_t dst_start = last_sunday(d.year, 3) * kSecondsPerDay + 3600;
    const std::int64_t dst_end = last_sunday(d.year, 10) * kSecondsPerDay + 3600;
    const bool dst = t >= dst_start && t < dst_end;
    return base_offset_ + (dst ? 3600 : 0);
}

CivilDateTime TimeZone::to_civil(std::int64_t t) const {
    const std::int64_t local = t + offset_at(t);
    std::int64_t days = local / kSecondsPerDay;
    std::int64_t sod = local % kSecondsPerDay;
    if (sod < 0) { sod += kSecondsPerDay; --days; }
    const CivilDate d = civil_from_days(days);
    return CivilDateTime{d.year, d.month, d.day, static_cast<int>(sod / 3600),
                         static_cast<int>((sod / 60) % 60), static_cast<int>(sod % 60)};
}

std::int64_t TimeZone::from_civil(const CivilDateTime& c) const {
    const std::int64_t local = days_from_civil(c.year, c.month, c.day) * kSecondsPerDay +
                               c.hour * 3600LL + c.minute * 60LL + c.second;
    // Guess with the standard offset, then fix up: at most two candidate
    // offsets exist. Pick the earliest instant mapping to >= this local
    // time (gap → start of the gap's successor, fold → first occurrence).
    std::int64_t t = local - base_offset_;
    for (int i = 0; i < 4; ++i) {
        const std::int64_t off = offset_at(t);
        const std::int64_t t2 = local - off;
        if (t2 == t) break;
        t = t2;
    }
    if (t + offset_at(t) < local) {
        // Landed inside a gap: advance to the transition point.
        t = local - offset_at(t + 3600);
        if (t + offset_at(t) < local) t += 3600;
    }
    // Fold: prefer the earlier instant.
    const std::int64_t earlier = t - 3600;
    if (earlier + offset_at(earlier) == local) t = earlier;
    return t;
}

std::int64_t TimeZone::local_midnight(const CivilDate& d) const {
    return from_civil(CivilDateTime{d.year, d.month, d.day, 0, 0, 0});
}

} // namespace polarscope::civil
