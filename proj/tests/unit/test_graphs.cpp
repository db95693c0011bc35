#include <doctest.h>

#include <algorithm>

#include "polarscope/errors.hpp"
#include "polarscope/graphs.hpp"
#include "polarscope/newsflow.hpp"
#include "polarscope/partition.hpp"
#include "polarscope/prng.hpp"

using namespace polarscope;
using namespace polarscope::graphs;

namespace {

InteractionEvent retweet(const std::string& id, const std::string& src,
                         const std::string& dst) {
    InteractionEvent e;
    e.id = id;
    e.created_at = 1000;
    e.author_id = src;
    e.text = "rt";
    e.kind = EventKind::retweet;
    e.retweeted_author_id = dst;
    e.retweeted_status_id = "s" + id;
    return e;
}

InteractionEvent original(const std::string& id, const std::string& author,
                          std::vector<std::string> urls = {},
                          std::optional<Sentiment> s = std::nullopt) {
    InteractionEvent e;
    e.id = id;
    e.created_at = 1000;
    e.author_id = author;
    e.text = "post";
    e.kind = EventKind::original;
    e.urls = std::move(urls);
    e.sentiment = s;
    return e;
}

const ingest::TimeWindow kWin{0, 0, 10000};

} // namespace

TEST_CASE("endorsement graph: multiplicity accumulates") {
    std::vector<InteractionEvent> events = {retweet("1", "A", "B"), retweet("2", "A", "B"),
                                            retweet("3", "A", "B")};
    const auto g = build_endorsement_graph(events, kWin);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].mult == 3);
    CHECK(g.event_count == 3);
    CHECK(g.nodes == std::vector<std::string>{"A", "B"});
    CHECK(g.nodes[g.edges[0].src] == "A");
}

TEST_CASE("endorsement graph: originals contribute nothing") {
    std::vector<InteractionEvent> events = {original("1", "A"), original("2", "B")};
    const auto g = build_endorsement_graph(events, kWin);
    CHECK(g.edges.empty());
    CHECK(g.nodes.empty());
    CHECK(g.event_count == 0);
}

TEST_CASE("endorsement graph: self-retweets dropped and counted") {
    std::vector<InteractionEvent> events = {retweet("1", "A", "A")};
    const auto g = build_endorsement_graph(events, kWin);
    CHECK(g.event_count == 0);
    CHECK(g.self_loop_count == 1);
    CHECK(g.nodes.empty());
}

TEST_CASE("endorsement graph: permutation invariant") {
    std::vector<InteractionEvent> events;
    rng::Prng prng(11);
    for (int i = 0; i < 60; ++i)
        events.push_back(retweet(std::to_string(i), "u" + std::to_string(prng.below(9)),
                                 "u" + std::to_string(prng.below(9))));
    const auto g1 = build_endorsement_graph(events, kWin);
    std::vector<InteractionEvent> shuffled = events;
    prng.shuffle(shuffled);
    const auto g2 = build_endorsement_graph(shuffled, kWin);
    CHECK(g1.nodes == g2.nodes);
    REQUIRE(g1.edges.size() == g2.edges.size());
    for (std::size_t i = 0; i < g1.edges.size(); ++i) {
        CHECK(g1.edges[i].src == g2.edges[i].src);
        CHECK(g1.edges[i].dst == g2.edges[i].dst);
        CHECK(g1.edges[i].mult == g2.edges[i].mult);
    }
}

TEST_CASE("user news graph: basics") {
    const auto vf = [](std::int64_t l, std::int64_t r, std::int64_t p) {
        return newsflow::virality(l, r, p);
    };

    SUBCASE("one original with one URL and sentiment") {
        std::vector<InteractionEvent> events = {
            original("1", "A", {"https://yle.fi/a/1"}, Sentiment::negative)};
        const auto g = build_user_news_graph(events, vf);
        CHECK(g.users.size() == 1);
        CHECK(g.articles.size() == 1);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].sentiment == Sentiment::negative);
        CHECK(g.missing_sentiment == 0);
    }

    SUBCASE("retweets with URLs contribute nothing") {
        auto e = retweet("1", "A", "B");
        e.urls = {"https://yle.fi/a/1"};
        std::vector<InteractionEvent> events = {e};
        const auto g = build_user_news_graph(events, vf);
        CHECK(g.edges.empty());
    }

    SUBCASE("same URL twice in one tweet dedupes to one edge") {
        std::vector<InteractionEvent> events = {
            original("1", "A", {"https://yle.fi/a/1", "https://yle.fi/a/1?utm_source=x"})};
        const auto g = build_user_news_graph(events, vf);
        CHECK(g.edges.size() == 1);
    }

    SUBCASE("absent sentiment maps to neutral with counter") {
        std::vector<InteractionEvent> events = {original("1", "A", {"https://yle.fi/a/1"})};
        const auto g = build_user_news_graph(events, vf);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].sentiment == Sentiment::neutral);
        CHECK(g.missing_sentiment == 1);
    }

    SUBCASE("bad URLs counted, tweet with no valid URL skipped") {
        std::vector<InteractionEvent> events = {original("1", "A", {"ftp://x.org/a"})};
        const auto g = build_user_news_graph(events, vf);
        CHECK(g.edges.empty());
        CHECK(g.rejected_urls == 1);
    }

    SUBCASE("virality computed from engagement counts") {
        auto e = original("1", "A", {"https://yle.fi/a/1"});
        e.like_count = 2;
        e.retweet_count = 1;
        e.reply_count = 3;
        std::vector<InteractionEvent> events = {e};
        const auto g = build_user_news_graph(events, vf);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].virality == 83);
    }
}

TEST_CASE("participation: counts and nonpartisan share") {
    Partition p = make_partition({{"A", 0}}, 1);

    SUBCASE("one assigned, one not") {
        std::vector<InteractionEvent> events = {retweet("1", "A", "B")};
        const auto g = build_endorsement_graph(events, kWin);
        const auto part = participation(g, p);
        CHECK(part.active_per_group == std::vector<std::int64_t>{1});
        CHECK(part.nonpartisan_count == 1);
        CHECK(part.nonpartisan_share == doctest::Approx(0.5));
    }

    SUBCASE("empty graph") {
        const auto g = build_endorsement_graph(std::vector<InteractionEvent>{}, kWin);
        const auto part = participation(g, p);
        CHECK(part.active_total == 0);
        CHECK(part.nonpartisan_share == 0.0);
    }

    SUBCASE("100 active users, 12 unassigned -> share 0.12") {
        // Mirrors the reported lower bound of the nonpartisan share range.
        std::vector<InteractionEvent> events;
        std::vector<std::pair<std::string, std::uint32_t>> assignment;
        for (int i = 0; i < 50; ++i) {
            const std::string a = "a" + std::to_string(i);
            const std::string b = "b" + std::to_string(i);
            events.push_back(retweet(std::to_string(i), a, b));
        }
        int assigned = 0;
        for (int i = 0; i < 50 && assigned < 88; ++i) {
            assignment.emplace_back("a" + std::to_string(i), assigned++ % 2);
            if (assigned < 88) assignment.emplace_back("b" + std::to_string(i), assigned++ % 2);
        }
        Partition ref = make_partition(std::move(assignment), 2);
        const auto g = build_endorsement_graph(events, kWin);
        REQUIRE(g.nodes.size() == 100);
        const auto part = participation(g, ref);
        CHECK(part.nonpartisan_count == 12);
        CHECK(part.nonpartisan_share == doctest::Approx(0.12));
        CHECK(part.active_per_group[0] + part.active_per_group[1] + part.nonpartisan_count ==
              part.active_total);
    }
}

TEST_CASE("restrict_to_news_retweets") {
    auto with_news = retweet("1", "A", "B");
    with_news.retweeted_urls = std::vector<std::string>{"https://hs.fi/a/1"};
    auto linkless = retweet("2", "A", "B");
    linkless.retweeted_urls = std::vector<std::string>{};
    auto orig = original("3", "A", {"https://hs.fi/a/2"});

    SUBCASE("keeps news retweets, drops linkless and originals") {
        std::vector<InteractionEvent> events = {with_news, linkless, orig};
        const auto res = restrict_to_news_retweets(events);
        CHECK(res.kept == std::vector<std::uint32_t>{0});
    }

    SUBCASE("errors when input lacks the capability entirely") {
        std::vector<InteractionEvent> events = {retweet("1", "A", "B"),
                                                retweet("2", "B", "C")};
        CHECK_THROWS_AS((void)restrict_to_news_retweets(events), UnsupportedInputError);
    }

    SUBCASE("mixed capability counted, not fatal") {
        std::vector<InteractionEvent> events = {with_news, retweet("9", "B", "C")};
        const auto res = restrict_to_news_retweets(events);
        CHECK(res.kept.size() == 1);
        CHECK(res.retweets_without_url_data == 1);
    }
}

TEST_CASE("filter_accounts") {
    std::vector<InteractionEvent> events = {retweet("1", "seed1", "x"),
                                            retweet("2", "other", "seed1"),
                                            original("3", "seed2")};
    const std::vector<std::string> seeds = {"seed1", "seed2"};

    CHECK(filter_accounts(events, AccountFilterMode::all, seeds).size() == 3);
    // candidates-only keeps seed authors; retweet targets do not count
    CHECK(filter_accounts(events, AccountFilterMode::candidates_only, seeds) ==
          std::vector<std::uint32_t>{0, 2});
    CHECK(filter_accounts(events, AccountFilterMode::exclude_candidates, seeds) ==
          std::vector<std::uint32_t>{1});
}

TEST_CASE("binarize collapses multiplicities") {
    std::vector<InteractionEvent> events = {retweet("1", "A", "B"), retweet("2", "A", "B"),
                                            retweet("3", "B", "A")};
    const auto g = binarize(build_endorsement_graph(events, kWin));
    CHECK(g.event_count == 2);
    for (const auto& e : g.edges) CHECK(e.mult == 1);
}
