#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "polarscope/civil_time.hpp"
#include "polarscope/events.hpp"

namespace polarscope::ingest {

/// Substring patterns for one topic. Keywords are stored case-folded;
/// matching is a faithful substring test with no tokenization, so short
/// keywords can match inside longer words by design.
struct TopicConfig {
    std::string topic_id;
    std::vector<std::string> keywords; // case-folded, sorted, unique
};

/// Build a validated config (folds, sorts, dedupes). Throws ConfigError
/// on an empty keyword list or an empty keyword.
TopicConfig make_topic_config(std::string topic_id, std::vector<std::string> keywords);

/// Load a JSON file mapping topic_id -> array of keyword strings.
/// File order of topics is preserved.
std::vector<TopicConfig> load_topic_configs(const std::string& path);

/// Load a JSON file with {"keywords": [...]}; returns case-folded list.
std::vector<std::string> load_keyword_list(const std::string& path);

enum class EventFormat { jsonl, csv };

struct ParseIssue {
    std::size_t line = 0;
    std::string message;
};

struct ParseReport {
    std::int64_t parsed = 0;
    std::int64_t rejected = 0;
    std::vector<ParseIssue> issues; // first kMaxStoredIssues only
    static constexpr std::size_t kMaxStoredIssues = 100;

    void add_issue(std::size_t line, std::string message);
};

/// Parse events from a stream. Malformed records are reported per line
/// and skipped; parsing continues. Duplicate ids keep the first record.
/// `seen_ids` carries the id set across several files of one dataset;
/// pass nullptr for a standalone stream.
std::vector<InteractionEvent> parse_events(std::istream& in, EventFormat format,
                                           ParseReport& report,
                                           std::unordered_set<std::string>* seen_ids = nullptr);

std::vector<InteractionEvent> load_events(const std::string& path, EventFormat format,
                                          ParseReport& report,
                                          std::unordered_set<std::string>* seen_ids = nullptr);

/// Write events in the same format parse_events reads (JSONL or CSV with
/// the canonical header). parse(serialize(x)) == x for accepted events.
void write_events(std::ostream& out, std::span<const InteractionEvent> events,
                  EventFormat format);

/// True iff any keyword (case-folded) is a substring of the folded text.
bool matches_any_keyword(std::string_view text, std::span<const std::string> folded_keywords);
bool matches_any_keyword_folded(std::string_view folded_text,
                                std::span<const std::string> folded_keywords);

/// Topic ids whose keyword set hits the text; result sorted by topic_id.
std::vector<std::string> match_topics(std::string_view text,
                                      std::span<const TopicConfig> configs);

/// Split events into (subject_matter, journalism_targeting). An event is
/// journalism-targeting iff any keyword matches its text. Order preserved,
/// partition exhaustive and disjoint.
std::pair<std::vector<InteractionEvent>, std::vector<InteractionEvent>>
split_journalism(std::span<const InteractionEvent> events,
                 std::span<const std::string> folded_keywords);

enum class WindowScheme { weekly, bimonthly, custom_days };

struct WindowSpec {
    WindowScheme scheme = WindowScheme::weekly;
    int days = 0; // for custom_days

    static WindowSpec weekly() { return {WindowScheme::weekly, 0}; }
    static WindowSpec bimonthly() { return {WindowScheme::bimonthly, 0}; }
    static WindowSpec custom(int days);
    std::string to_string() const;
};

struct TimeWindow {
    std::int32_t index = 0;
    std::int64_t start = 0; // Unix seconds, inclusive
    std::int64_t end = 0;   // exclusive

    bool contains(std::int64_t t) const { return t >= start && t < end; }
    bool operator==(const TimeWindow&) const = default;
};

struct StudyPeriod {
    std::string name;
    civil::CivilDate start; // inclusive
    civil::CivilDate end;   // inclusive
};

/// Gap-free windows covering the period. Weekly windows are ISO calendar
/// weeks (local Monday 00:00); the first window is the week containing
/// the period start. Bimonthly windows are two-calendar-month blocks
/// anchored at the period start's month. custom_days windows start at
/// the period start's local midnight.
std::vector<TimeWindow> make_windows(const WindowSpec& spec, const StudyPeriod& period,
                                     const civil::TimeZone& tz);

struct WindowedEvents {
    std::vector<TimeWindow> windows;
    std::vector<std::vector<std::uint32_t>> event_indices; // per window, input order
    std::int64_t dropped = 0; // events outside the period
};

/// Assign each event to the unique window containing its timestamp.
/// Events outside the period are dropped and counted. Windows with no
/// events are still present so series have no gaps.
WindowedEvents window_events(std::span<const InteractionEvent> events,
                             const WindowSpec& spec, const StudyPeriod& period,
                             const civil::TimeZone& tz);

} // namespace polarscope::ingest
