#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "polarscope/errors.hpp"
#include "polarscope/ingest.hpp"
#include "polarscope/prng.hpp"

using namespace polarscope;
using namespace polarscope::ingest;

namespace {

const std::string kTopicsPath = std::string(POLARSCOPE_SOURCE_DIR) + "/config/topics_table_a1.json";

std::vector<InteractionEvent> parse_str(const std::string& body, EventFormat fmt,
                                        ParseReport& rep) {
    std::istringstream in(body);
    return parse_events(in, fmt, rep);
}

InteractionEvent retweet(const std::string& id, const std::string& author,
                         const std::string& target, std::int64_t t = 1000) {
    InteractionEvent e;
    e.id = id;
    e.created_at = t;
    e.author_id = author;
    e.text = "rt";
    e.kind = EventKind::retweet;
    e.retweeted_author_id = target;
    e.retweeted_status_id = "s" + id;
    return e;
}

} // namespace

TEST_CASE("parse_events: well-formed retweet line") {
    ParseReport rep;
    const auto events = parse_str(
        R"({"id":"1","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"hello",)"
        R"("kind":"retweet","retweeted_author_id":"b","retweeted_status_id":"s9",)"
        R"("urls":[],"like_count":3,"retweet_count":1,"reply_count":0})"
        "\n",
        EventFormat::jsonl, rep);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == EventKind::retweet);
    CHECK(events[0].retweeted_author_id == "b");
    CHECK(events[0].like_count == 3);
    CHECK(!events[0].sentiment.has_value()); // absent, not neutral
    CHECK(rep.parsed == 1);
    CHECK(rep.rejected == 0);
}

TEST_CASE("parse_events: empty input") {
    ParseReport rep;
    const auto events = parse_str("", EventFormat::jsonl, rep);
    CHECK(events.empty());
    CHECK(rep.parsed == 0);
    CHECK(rep.rejected == 0);
}

TEST_CASE("parse_events: negative count rejected, run continues") {
    ParseReport rep;
    const auto events = parse_str(
        R"({"id":"1","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"x",)"
        R"("kind":"original","like_count":-1})"
        "\n"
        R"({"id":"2","created_at":"2021-03-01T10:00:01Z","author_id":"a","text":"y",)"
        R"("kind":"original"})"
        "\n",
        EventFormat::jsonl, rep);
    CHECK(events.size() == 1);
    CHECK(rep.parsed == 1);
    CHECK(rep.rejected == 1);
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].line == 1);
}

TEST_CASE("parse_events: duplicate ids across files of one dataset") {
    std::unordered_set<std::string> seen;
    ParseReport rep;
    const char* line =
        R"({"id":"same","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"x","kind":"original"})"
        "\n";
    std::istringstream first(line), second(line);
    const auto a = parse_events(first, EventFormat::jsonl, rep, &seen);
    const auto b = parse_events(second, EventFormat::jsonl, rep, &seen);
    CHECK(a.size() == 1);
    CHECK(b.empty()); // second file's record is the duplicate
    CHECK(rep.rejected == 1);
}

TEST_CASE("parse_events: duplicate id keeps first") {
    ParseReport rep;
    const auto events = parse_str(
        R"({"id":"1","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"first","kind":"original"})"
        "\n"
        R"({"id":"1","created_at":"2021-03-01T11:00:00Z","author_id":"b","text":"second","kind":"original"})"
        "\n",
        EventFormat::jsonl, rep);
    REQUIRE(events.size() == 1);
    CHECK(events[0].text == "first");
    CHECK(rep.rejected == 1);
}

TEST_CASE("parse_events: invariant violations rejected") {
    ParseReport rep;
    // retweet without target, original with target, bad timestamp
    parse_str(
        R"({"id":"1","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"x","kind":"retweet"})"
        "\n"
        R"({"id":"2","created_at":"2021-03-01T10:00:00Z","author_id":"a","text":"x","kind":"original","retweeted_author_id":"b"})"
        "\n"
        R"({"id":"3","created_at":"yesterday","author_id":"a","text":"x","kind":"original"})"
        "\n"
        R"(not json at all)"
        "\n",
        EventFormat::jsonl, rep);
    CHECK(rep.parsed == 0);
    CHECK(rep.rejected == 4);
}

TEST_CASE("events: jsonl and csv round trips preserve accepted events") {
    std::vector<InteractionEvent> original;
    auto e1 = retweet("1", "alice", "bob", 1614592800);
    e1.text = "some Text, with \"quotes\" and ümlauts";
    e1.sentiment = Sentiment::negative;
    e1.urls = {"https://yle.fi/a/1"};
    e1.like_count = 7;
    original.push_back(e1);
    InteractionEvent e2;
    e2.id = "2";
    e2.created_at = 1614592801;
    e2.author_id = "carol";
    e2.text = "plain original";
    e2.kind = EventKind::original;
    e2.retweeted_text = "quoted text";
    original.push_back(e2);
    auto e3 = retweet("3", "dan", "erin", 1614592802);
    e3.retweeted_urls = std::vector<std::string>{"https://hs.fi/a/9"};
    original.push_back(e3);

    for (const auto fmt : {EventFormat::jsonl, EventFormat::csv}) {
        std::ostringstream out;
        write_events(out, original, fmt);
        ParseReport rep;
        const auto parsed = parse_str(out.str(), fmt, rep);
        CHECK(rep.rejected == 0);
        REQUIRE(parsed.size() == original.size());
        CHECK(parsed[0] == original[0]);
        CHECK(parsed[1] == original[1]);
        CHECK(parsed[2] == original[2]);
    }
}

TEST_CASE("match_topics: table keywords") {
    const auto configs = load_topic_configs(kTopicsPath);
    REQUIRE(configs.size() == 5);

    const auto hit1 = match_topics("Korona rajoitukset jatkuvat", configs);
    CHECK(hit1 == std::vector<std::string>{"coronavirus"});

    CHECK(match_topics("", configs).empty());

    const auto hit2 = match_topics("NATO-jäsenyys ja hiilinielu", configs);
    CHECK(hit2 == std::vector<std::string>{"climate", "security"});
}

TEST_CASE("match_topics: case insensitive via folding") {
    const auto configs = load_topic_configs(kTopicsPath);
    const auto lower = match_topics("päästökauppa ja ilmasto", configs);
    const auto upper = match_topics("PÄÄSTÖKAUPPA JA ILMASTO", configs);
    CHECK(lower == upper);
    CHECK(std::find(lower.begin(), lower.end(), "climate") != lower.end());
}

TEST_CASE("match_topics: monotone in keywords") {
    auto base = make_topic_config("t", {"alpha"});
    auto extended = make_topic_config("t", {"alpha", "beta"});
    std::vector<TopicConfig> one{base}, two{extended};
    const char* texts[] = {"alphabet soup", "beta only", "nothing", "ALPHA BETA"};
    for (const auto* text : texts) {
        const auto a = match_topics(text, one);
        const auto b = match_topics(text, two);
        // adding a keyword never removes a match
        if (!a.empty()) CHECK(!b.empty());
    }
}

TEST_CASE("topic config validation") {
    CHECK_THROWS_AS(make_topic_config("x", {}), ConfigError);
    CHECK_THROWS_AS(make_topic_config("x", {"ok", ""}), ConfigError);
    const auto cfg = make_topic_config("x", {"B", "a", "b"});
    CHECK(cfg.keywords == std::vector<std::string>{"a", "b"}); // folded + deduped
}

TEST_CASE("split_journalism: keyword routing, order preserved") {
    std::vector<InteractionEvent> events;
    for (int i = 0; i < 6; ++i) {
        InteractionEvent e;
        e.id = std::to_string(i);
        e.created_at = i;
        e.author_id = "a";
        e.kind = EventKind::original;
        e.text = i % 2 == 0 ? "Toimittaja kirjoitti jutun" : "ihan muu aihe";
        events.push_back(e);
    }
    const std::vector<std::string> keywords = {"toimittaja", "journalis"};
    const auto [subject, journalism] = split_journalism(events, keywords);
    CHECK(journalism.size() == 3);
    CHECK(subject.size() == 3);
    CHECK(journalism[0].id == "0");
    CHECK(journalism[1].id == "2");
    CHECK(subject[0].id == "1");

    // empty keyword list: everything is subject matter
    const auto [all_subject, none] = split_journalism(events, std::vector<std::string>{});
    CHECK(none.empty());
    CHECK(all_subject.size() == events.size());

    // empty input
    const auto [es, ej] = split_journalism(std::vector<InteractionEvent>{}, keywords);
    CHECK(es.empty());
    CHECK(ej.empty());
}

TEST_CASE("window_events: weekly windows, gaps, boundaries") {
    const auto tz = civil::TimeZone::utc();
    StudyPeriod period{"p", {2021, 3, 1}, {2021, 3, 31}};

    // Two events 10 days apart -> two occupied windows with one empty between.
    std::vector<InteractionEvent> events;
    auto a = retweet("1", "a", "b", *civil::parse_rfc3339("2021-03-02T12:00:00Z"));
    auto b = retweet("2", "a", "b", *civil::parse_rfc3339("2021-03-12T12:00:00Z"));
    events.push_back(a);
    events.push_back(b);

    const auto wins = window_events(events, WindowSpec::weekly(), period, tz);
    REQUIRE(wins.windows.size() == 5); // weeks of Mar 1, 8, 15, 22, 29
    CHECK(wins.event_indices[0].size() == 1);
    CHECK(wins.event_indices[1].size() == 1);
    CHECK(wins.event_indices[2].empty());
    CHECK(wins.dropped == 0);

    // Window start is inclusive: Monday 00:00 goes to the starting window.
    std::vector<InteractionEvent> boundary{
        retweet("3", "a", "b", *civil::parse_rfc3339("2021-03-08T00:00:00Z"))};
    const auto wb = window_events(boundary, WindowSpec::weekly(), period, tz);
    CHECK(wb.event_indices[1].size() == 1);
    CHECK(wb.event_indices[0].empty());

    // Outside the study period -> dropped and counted.
    std::vector<InteractionEvent> outside{
        retweet("4", "a", "b", *civil::parse_rfc3339("2021-04-01T00:00:00Z"))};
    const auto wo = window_events(outside, WindowSpec::weekly(), period, tz);
    CHECK(wo.dropped == 1);
}

TEST_CASE("window_events: multiset conservation property") {
    const auto tz = *civil::TimeZone::parse("Europe/Helsinki");
    StudyPeriod period{"p", {2021, 1, 4}, {2021, 2, 28}};
    rng::Prng prng(77);
    std::vector<InteractionEvent> events;
    const auto lo = *civil::parse_rfc3339("2020-12-25T00:00:00Z");
    const auto hi = *civil::parse_rfc3339("2021-03-10T00:00:00Z");
    for (int i = 0; i < 500; ++i) {
        auto e = retweet(std::to_string(i), "a", "b",
                         lo + static_cast<std::int64_t>(prng.below(
                                  static_cast<std::uint64_t>(hi - lo))));
        events.push_back(e);
    }
    for (const auto& spec :
         {WindowSpec::weekly(), WindowSpec::bimonthly(), WindowSpec::custom(11)}) {
        const auto wins = window_events(events, spec, period, tz);
        std::multiset<std::uint32_t> assigned;
        std::int64_t total = 0;
        for (std::size_t w = 0; w < wins.windows.size(); ++w) {
            for (const auto idx : wins.event_indices[w]) {
                assigned.insert(idx);
                // event actually lies inside its window
                CHECK(wins.windows[w].contains(events[idx].created_at));
            }
            total += static_cast<std::int64_t>(wins.event_indices[w].size());
            if (w > 0) CHECK(wins.windows[w].start == wins.windows[w - 1].end); // contiguity
        }
        CHECK(assigned.size() == static_cast<std::size_t>(total)); // each at most once
        CHECK(total + wins.dropped == static_cast<std::int64_t>(events.size()));
    }
}

TEST_CASE("window_events: weekly windows start on ISO Monday local midnight") {
    const auto tz = *civil::TimeZone::parse("Europe/Helsinki");
    StudyPeriod period{"p", {2021, 3, 15}, {2021, 4, 25}}; // spans the DST jump
    const auto wins = make_windows(WindowSpec::weekly(), period, tz);
    for (const auto& w : wins) {
        const auto c = tz.to_civil(w.start);
        CHECK(c.hour == 0);
        CHECK(c.minute == 0);
        CHECK(civil::weekday(civil::days_from_civil(c.year, c.month, c.day)) == 0);
    }
}

TEST_CASE("window_events: unknown timezone is a config error upstream") {
    CHECK(!civil::TimeZone::parse("Not/AZone").has_value());
}
