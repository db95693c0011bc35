#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace polarscope::civil {

/// Wall-clock date/time without zone information.
struct CivilDateTime {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;

    bool operator==(const CivilDateTime&) const = default;
};

struct CivilDate {
    int year = 1970;
    int month = 1;
    int day = 1;

    bool operator==(const CivilDate&) const = default;
    auto operator<=>(const CivilDate&) const = default;
};

// Proleptic Gregorian day count (days since 1970-01-01).
std::int64_t days_from_civil(int y, int m, int d);
CivilDate civil_from_days(std::int64_t days);

/// 0 = Monday ... 6 = Sunday.
int weekday(std::int64_t days);

bool valid_date(int y, int m, int d);

/// Parse "YYYY-MM-DD".
std::optional<CivilDate> parse_date(std::string_view s);
std::string format_date(const CivilDate& d);

/// Parse an RFC 3339 timestamp ("2021-03-01T12:00:00Z",
/// "2021-03-01T12:00:00+02:00", optional fractional seconds which are
/// truncated). Returns Unix seconds (UTC).
std::optional<std::int64_t> parse_rfc3339(std::string_view s);

/// "YYYY-MM-DDTHH:MM:SSZ" (always UTC).
std::string format_rfc3339(std::int64_t unix_seconds);

/// Time zone with a deterministic built-in rule set. Supported ids:
/// "UTC", fixed offsets "UTC+HH:MM" / "UTC-HH:MM", and "Europe/Helsinki"
/// (EET/EEST with the EU daylight-saving rule: +1h between the last
/// Sunday of March and the last Sunday of October, transitions at
/// 01:00 UTC).
class TimeZone {
public:
    static TimeZone utc();
    static std::optional<TimeZone> parse(std::string_view id);
    static std::string supported_ids_hint();

    const std::string& id() const { return id_; }

    /// Offset east of UTC, in seconds, in effect at the given instant.
    std::int64_t offset_at(std::int64_t unix_seconds) const;

    CivilDateTime to_civil(std::int64_t unix_seconds) const;

    /// Instant for a local civil time. Times inside a DST gap shift
    /// forward by the gap length; folded times resolve to the earlier
    /// instant.
    std::int64_t from_civil(const CivilDateTime& c) const;

    /// Local midnight at the start of the given date.
    std::int64_t local_midnight(const CivilDate& d) const;

private:
    enum class Rule { fixed, eu_helsinki };
    TimeZone(std::string id, Rule rule, std::int64_t base_offset)
        : id_(std::move(id)), rule_(rule), base_offset_(base_offset) {}

    std::string id_;
    Rule rule_;
    std::int64_t base_offset_; // seconds east of UTC (standard time)
};

} // namespace polarscope::civil
