#include "polarscope/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "polarscope/csvio.hpp"
#include "polarscope/errors.hpp"
#include "polarscope/text.hpp"

namespace polarscope::ingest {

using nlohmann::json;

TopicConfig make_topic_config(std::string topic_id, std::vector<std::string> keywords) {
    if (topic_id.empty()) throw ConfigError("topic_id must be non-empty");
    if (keywords.empty())
        throw ConfigError("topic '" + topic_id + "': keyword list must be non-empty");
    TopicConfig cfg;
    cfg.topic_id = std::move(topic_id);
    cfg.keywords.reserve(keywords.size());
    for (auto& k : keywords) {
        if (k.empty())
            throw ConfigError("topic '" + cfg.topic_id + "': empty keyword");
        cfg.keywords.push_back(text::case_fold(k));
    }
    std::sort(cfg.keywords.begin(), cfg.keywords.end());
    cfg.keywords.erase(std::unique(cfg.keywords.begin(), cfg.keywords.end()),
                       cfg.keywords.end());
    return cfg;
}

std::vector<TopicConfig> load_topic_configs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open topic config: " + path);
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": expected an object of topic -> keywords");
    std::vector<TopicConfig> out;
    for (auto& [key, value] : j.items()) {
        if (key == "description") continue;
        if (!value.is_array())
            throw ConfigError(path + ": topic '" + key + "' must map to an array");
        std::vector<std::string> kws;
        for (const auto& v : value) {
            if (!v.is_string())
                throw ConfigError(path + ": topic '" + key + "' has a non-string keyword");
            kws.push_back(v.get<std::string>());
        }
        out.push_back(make_topic_config(key, std::move(kws)));
    }
    if (out.empty()) throw ConfigError(path + ": no topics defined");
    return out;
}

std::vector<std::string> load_keyword_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open keyword list: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("keywords") || !j["keywords"].is_array())
        throw ConfigError(path + ": expected {\"keywords\": [...]}");
    std::vector<std::string> out;
    for (const auto& v : j["keywords"]) {
        if (!v.is_string()) throw ConfigError(path + ": non-string keyword");
        const auto folded = text::case_fold(v.get<std::string>());
        if (folded.empty()) throw ConfigError(path + ": empty keyword");
        out.push_back(folded);
    }
    return out;
}

void ParseReport::add_issue(std::size_t line, std::string message) {
    ++rejected;
    if (issues.size() < kMaxStoredIssues) issues.push_back({line, std::move(message)});
}

namespace {

struct FieldResult {
    bool ok = true;
    std::string error;
};

FieldResult finish_event(InteractionEvent& e) {
    if (e.id.empty()) return {false, "missing or empty id"};
    if (e.author_id.empty()) return {false, "missing or empty author_id"};
    if (e.like_count < 0 || e.retweet_count < 0 || e.reply_count < 0)
        return {false, "negative engagement count"};
    if (e.kind == EventKind::retweet) {
        if (e.retweeted_author_id.empty() || e.retweeted_status_id.empty())
            return {false, "retweet without retweeted_author_id/retweeted_status_id"};
    } else {
        if (!e.retweeted_author_id.empty() || !e.retweeted_status_id.empty())
            return {false, "original carrying retweeted_author_id/retweeted_status_id"};
    }
    return {};
}

bool parse_jsonl_record(const std::string& line, InteractionEvent& e, std::string& err) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        err = std::string("invalid JSON: ") + ex.what();
        return false;
    }
    if (!j.is_object()) { err = "record is not a JSON object"; return false; }

    auto str = [&](const char* key, std::string& out, bool required) -> bool {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            if (required) { err = std::string("missing field: ") + key; return false; }
            return true;
        }
        if (!it->is_string()) { err = std::string("field not a string: ") + key; return false; }
        out = it->get<std::string>();
        return true;
    };
    auto count = [&](const char* key, std::int64_t& out) -> bool {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) { out = 0; return true; }
        if (!it->is_number_integer()) {
            err = std::string("field not an integer: ") + key;
            return false;
        }
        out = it->get<std::int64_t>();
        return true;
    };

    if (!str("id", e.id, true)) return false;
    std::string ts;
    if (!str("created_at", ts, true)) return false;
    auto t = civil::parse_rfc3339(ts);
    if (!t) { err = "unparseable created_at: " + ts; return false; }
    e.created_at = *t;
    if (!str("author_id", e.author_id, true)) return false;
    if (!str("text", e.text, true)) return false;

    std::string kind;
    if (!str("kind", kind, true)) return false;
    if (kind == "original") e.kind = EventKind::original;
    else if (kind == "retweet") e.kind = EventKind::retweet;
    else { err = "unknown kind: " + kind; return false; }

    if (!str("retweeted_author_id", e.retweeted_author_id, false)) return false;
    if (!str("retweeted_status_id", e.retweeted_status_id, false)) return false;

    if (auto it = j.find("urls"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) { err = "urls is not an array"; return false; }
        for (const auto& u : *it) {
            if (!u.is_string()) { err = "urls contains a non-string"; return false; }
            e.urls.push_back(u.get<std::string>());
        }
    }
    if (!count("like_count", e.like_count)) return false;
    if (!count("retweet_count", e.retweet_count)) return false;
    if (!count("reply_count", e.reply_count)) return false;

    if (auto it = j.find("sentiment"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) { err = "sentiment is not a string"; return false; }
        auto s = sentiment_from_string(it->get<std::string>());
        if (!s) { err = "unknown sentiment: " + it->get<std::string>(); return false; }
        e.sentiment = *s;
    }
    if (auto it = j.find("retweeted_urls"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) { err = "retweeted_urls is not an array"; return false; }
        std::vector<std::string> rs;
        for (const auto& u : *it) {
            if (!u.is_string()) { err = "retweeted_urls contains a non-string"; return false; }
            rs.push_back(u.get<std::string>());
        }
        e.retweeted_urls = std::move(rs);
    }
    if (auto it = j.find("retweeted_text"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) { err = "retweeted_text is not a string"; return false; }
        e.retweeted_text = it->get<std::string>();
    }

    auto fr = finish_event(e);
    if (!fr.ok) { err = fr.error; return false; }
    return true;
}

// CSV column layout for event files. urls / retweeted_urls cells hold
// space-separated lists (URLs cannot contain spaces).
const std::vector<std::string> kCsvHeader = {
    "id", "created_at", "author_id", "text", "kind", "retweeted_author_id",
    "retweeted_status_id", "urls", "like_count", "retweet_count", "reply_count",
    "sentiment", "retweeted_urls", "retweeted_text"};

std::vector<std::string> split_space(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto next = s.find(' ', pos);
        if (next == std::string::npos) next = s.size();
        if (next > pos) out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

bool parse_csv_record(const std::vector<std::string>& fields,
                      const std::vector<int>& colmap, InteractionEvent& e,
                      std::string& err) {
    auto get = [&](std::size_t canonical) -> const std::string* {
        const int idx = colmap[canonical];
        if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return nullptr;
        return &fields[static_cast<std::size_t>(idx)];
    };
    auto get_or_empty = [&](std::size_t canonical) -> std::string {
        const std::string* p = get(canonical);
        return p ? *p : std::string();
    };

    e.id = get_or_empty(0);
    const std::string ts = get_or_empty(1);
    auto t = civil::parse_rfc3339(ts);
    if (!t) { err = "unparseable created_at: " + ts; return false; }
    e.created_at = *t;
    e.author_id = get_or_empty(2);
    e.text = get_or_empty(3);
    const std::string kind = get_or_empty(4);
    if (kind == "original") e.kind = EventKind::original;
    else if (kind == "retweet") e.kind = EventKind::retweet;
    else { err = "unknown kind: " + kind; return false; }
    e.retweeted_author_id = get_or_empty(5);
    e.retweeted_status_id = get_or_empty(6);
    e.urls = split_space(get_or_empty(7));

    auto parse_count = [&](std::size_t canonical, std::int64_t& out) -> bool {
        const std::string v = get_or_empty(canonical);
        if (v.empty()) { out = 0; return true; }
        try {
            std::size_t used = 0;
            out = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
        } catch (...) {
            err = "invalid count: " + v;
            return false;
        }
        return true;
    };
    if (!parse_count(8, e.like_count)) return false;
    if (!parse_count(9, e.retweet_count)) return false;
    if (!parse_count(10, e.reply_count)) return false;

    const std::string sent = get_or_empty(11);
    if (!sent.empty()) {
        auto s = sentiment_from_string(sent);
        if (!s) { err = "unknown sentiment: " + sent; return false; }
        e.sentiment = *s;
    }
    if (const std::string* p = get(12); p && !p->empty())
        e.retweeted_urls = split_space(*p);
    if (const std::string* p = get(13); p && !p->empty()) e.retweeted_text = *p;

    auto fr = finish_event(e);
    if (!fr.ok) { err = fr.error; return false; }
    return true;
}

} // namespace

std::vector<InteractionEvent> parse_events(std::istream& in, EventFormat format,
                                           ParseReport& report,
                                           std::unordered_set<std::string>* seen_ids) {
    std::vector<InteractionEvent> out;
    std::unordered_set<std::string> local_ids;
    if (!seen_ids) seen_ids = &local_ids;
    std::string line;
    std::size_t lineno = 0;

    std::vector<int> colmap;
    bool have_header = format != EventFormat::csv;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (!have_header) {
            const auto header = csv::split_line(line);
            colmap.assign(kCsvHeader.size(), -1);
            for (std::size_t c = 0; c < kCsvHeader.size(); ++c) {
                for (std::size_t i = 0; i < header.size(); ++i)
                    if (header[i] == kCsvHeader[c]) { colmap[c] = static_cast<int>(i); break; }
            }
            for (std::size_t c = 0; c < 5; ++c) // id..kind are required columns
                if (colmap[c] < 0)
                    throw DataError("event CSV missing required column: " + kCsvHeader[c]);
            have_header = true;
            continue;
        }

        InteractionEvent e;
        std::string err;
        bool ok;
        if (format == EventFormat::jsonl) {
            ok = parse_jsonl_record(line, e, err);
        } else {
            ok = parse_csv_record(csv::split_line(line), colmap, e, err);
        }
        if (!ok) {
            report.add_issue(lineno, err);
            continue;
        }
        if (!seen_ids->insert(e.id).second) {
            report.add_issue(lineno, "duplicate id: " + e.id);
            continue;
        }
        ++report.parsed;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<InteractionEvent> load_events(const std::string& path, EventFormat format,
                                          ParseReport& report,
                                          std::unordered_set<std::string>* seen_ids) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open events file: " + path);
    return parse_events(in, format, report, seen_ids);
}

void write_events(std::ostream& out, std::span<const InteractionEvent> events,
                  EventFormat format) {
    if (format == EventFormat::jsonl) {
        for (const auto& e : events) out << to_jsonl(e) << '\n';
        return;
    }
    csv::Writer w(out);
    w.row(kCsvHeader);
    auto join_space = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s.push_back(' ');
            s += v[i];
        }
        return s;
    };
    for (const auto& e : events) {
        w.row({e.id, civil::format_rfc3339(e.created_at), e.author_id, e.text,
               e.kind == EventKind::retweet ? "retweet" : "original",
               e.retweeted_author_id, e.retweeted_status_id, join_space(e.urls),
               csv::format_int(e.like_count), csv::format_int(e.retweet_count),
               csv::format_int(e.reply_count),
               e.sentiment ? to_string(*e.sentiment) : "",
               e.retweeted_urls ? join_space(*e.retweeted_urls) : "",
               e.retweeted_text ? *e.retweeted_text : ""});
    }
}

bool matches_any_keyword_folded(std::string_view folded_text,
                                std::span<const std::string> folded_keywords) {
    for (const auto& k : folded_keywords)
        if (text::contains_folded(folded_text, k)) return true;
    return false;
}

bool matches_any_keyword(std::string_view s, std::span<const std::string> folded_keywords) {
    return matches_any_keyword_folded(text::case_fold(s), folded_keywords);
}

std::vector<std::string> match_topics(std::string_view s,
                                      std::span<const TopicConfig> configs) {
    const std::string folded = text::case_fold(s);
    std::vector<std::string> out;
    for (const auto& cfg : configs)
        if (matches_any_keyword_folded(folded, cfg.keywords)) out.push_back(cfg.topic_id);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::vector<InteractionEvent>, std::vector<InteractionEvent>>
split_journalism(std::span<const InteractionEvent> events,
                 std::span<const std::string> folded_keywords) {
    std::pair<std::vector<InteractionEvent>, std::vector<InteractionEvent>> out;
    for (const auto& e : events) {
        if (matches_any_keyword(e.text, folded_keywords)) out.second.push_back(e);
        else out.first.push_back(e);
    }
    return out;
}

WindowSpec WindowSpec::custom(int days) {
    if (days < 1) throw ConfigError("custom window length must be >= 1 day");
    return {WindowScheme::custom_days, days};
}

std::string WindowSpec::to_string() const {
    switch (scheme) {
        case WindowScheme::weekly: return "weekly";
        case WindowScheme::bimonthly: return "bimonthly";
        case WindowScheme::custom_days: return "days:" + std::to_string(days);
    }
    return "weekly";
}

namespace {

civil::CivilDate add_months(civil::CivilDate d, int months) {
    int m0 = d.year * 12 + (d.month - 1) + months;
    civil::CivilDate out;
    out.year = m0 / 12;
    out.month = m0 % 12 + 1;
    out.day = 1;
    return out;
}

} // namespace

std::vector<TimeWindow> make_windows(const WindowSpec& spec, const StudyPeriod& period,
                                     const civil::TimeZone& tz) {
    if (period.end < period.start)
        throw ConfigError("study period '" + period.name + "': end before start");
    const std::int64_t period_end =
        tz.local_midnight(civil::civil_from_days(
            civil::days_from_civil(period.end.year, period.end.month, period.end.day) + 1));

    std::vector<TimeWindow> out;
    std::int32_t index = 0;
    if (spec.scheme == WindowScheme::bimonthly) {
        civil::CivilDate anchor{period.start.year, period.start.month, 1};
        for (civil::CivilDate lo = anchor;; lo = add_months(lo, 2)) {
            const civil::CivilDate hi = add_months(lo, 2);
            const std::int64_t s = tz.local_midnight(lo);
            const std::int64_t e = tz.local_midnight(hi);
            if (s >= period_end) break;
            out.push_back({index++, s, e});
        }
        return out;
    }

    std::int64_t first_day;
    int step_days;
    if (spec.scheme == WindowScheme::weekly) {
        const std::int64_t start_day =
            civil::days_from_civil(period.start.year, period.start.month, period.start.day);
        first_day = start_day - civil::weekday(start_day); // back to Monday
        step_days = 7;
    } else {
        first_day =
            civil::days_from_civil(period.start.year, period.start.month, period.start.day);
        step_days = spec.days;
    }
    for (std::int64_t lo = first_day;; lo += step_days) {
        const std::int64_t s = tz.local_midnight(civil::civil_from_days(lo));
        const std::int64_t e = tz.local_midnight(civil::civil_from_days(lo + step_days));
        if (s >= period_end) break;
        out.push_back({index++, s, e});
    }
    return out;
}

WindowedEvents window_events(std::span<const InteractionEvent> events,
                             const WindowSpec& spec, const StudyPeriod& period,
                             const civil::TimeZone& tz) {
    WindowedEvents out;
    out.windows = make_windows(spec, period, tz);
    out.event_indices.resize(out.windows.size());
    if (out.windows.empty()) return out;

    const std::int64_t period_begin = tz.local_midnight(period.start);
    const std::int64_t period_end =
        tz.local_midnight(civil::civil_from_days(
            civil::days_from_civil(period.end.year, period.end.month, period.end.day) + 1));

    std::vector<std::int64_t> starts;
    starts.reserve(out.windows.size());
    for (const auto& w : out.windows) starts.push_back(w.start);

    for (std::uint32_t i = 0; i < events.size(); ++i) {
        const std::int64_t t = events[i].created_at;
        // The first/last window can overhang the period; period bounds win.
        if (t < period_begin || t >= period_end || t < starts.front()) {
            ++out.dropped;
            continue;
        }
        const auto it = std::upper_bound(starts.begin(), starts.end(), t);
        const std::size_t w = static_cast<std::size_t>(it - starts.begin()) - 1;
        out.event_indices[w].push_back(i);
    }
    return out;
}

} // namespace polarscope::ingest
