#include <doctest.h>

#include <map>
#include <numeric>

#include "polarscope/errors.hpp"
#include "polarscope/newsflow.hpp"
#include "polarscope/prng.hpp"
#include "polarscope/synth.hpp"

using namespace polarscope;
using namespace polarscope::newsflow;

namespace {

InteractionEvent share(const std::string& id, const std::string& author,
                       const std::string& url, Sentiment s, std::int64_t replies) {
    InteractionEvent e;
    e.id = id;
    e.created_at = 1000;
    e.author_id = author;
    e.text = "share";
    e.kind = EventKind::original;
    e.urls = {url};
    e.sentiment = s;
    e.reply_count = replies;
    return e;
}

const graphs::ViralityFn kVirality = [](std::int64_t l, std::int64_t r, std::int64_t p) {
    return virality(l, r, p);
};

} // namespace

TEST_CASE("virality: published formula, exact integers") {
    CHECK(virality(0, 0, 0) == 0);
    CHECK(virality(2, 1, 3) == 83);
    CHECK(virality(1000, 500, 100) == 40100);
    CHECK_THROWS_AS((void)virality(-1, 0, 0), DataError);
    // wide integers: counts near 2^31 do not overflow
    const std::int64_t big = (1LL << 31);
    CHECK(virality(big, big, big) == 51 * big);
}

TEST_CASE("virality: linear in each component") {
    rng::Prng prng(4);
    for (int i = 0; i < 200; ++i) {
        const auto a1 = static_cast<std::int64_t>(prng.below(10000));
        const auto a2 = static_cast<std::int64_t>(prng.below(10000));
        const auto b1 = static_cast<std::int64_t>(prng.below(10000));
        const auto b2 = static_cast<std::int64_t>(prng.below(10000));
        const auto c1 = static_cast<std::int64_t>(prng.below(10000));
        const auto c2 = static_cast<std::int64_t>(prng.below(10000));
        CHECK(virality(a1 + a2, b1 + b2, c1 + c2) ==
              virality(a1, b1, c1) + virality(a2, b2, c2));
    }
}

TEST_CASE("node_centrality: incident sums and conservation") {
    std::vector<InteractionEvent> events = {
        share("1", "alice", "https://hs.fi/a/1", Sentiment::neutral, 10),
        share("2", "bob", "https://hs.fi/a/1", Sentiment::neutral, 5),
        share("3", "alice", "https://yle.fi/a/2", Sentiment::neutral, 7),
    };
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto c = node_centrality(g);

    const auto a1 = *g.article_index("hs.fi/a/1");
    CHECK(c.article[a1] == 15);
    const auto isolated = *g.article_index("yle.fi/a/2");
    CHECK(c.article[isolated] == 7);

    // conservation: user sums == article sums == edge sums
    const auto user_total = std::accumulate(c.user.begin(), c.user.end(), std::int64_t{0});
    const auto article_total =
        std::accumulate(c.article.begin(), c.article.end(), std::int64_t{0});
    std::int64_t edge_total = 0;
    for (const auto& e : g.edges) edge_total += e.virality;
    CHECK(user_total == edge_total);
    CHECK(article_total == edge_total);
}

TEST_CASE("node_centrality: thirty-edge fixture against an independent oracle") {
    // Independent oracle: plain per-key accumulation over the raw events,
    // sharing nothing with the graph builder or centrality code.
    rng::Prng prng(808);
    std::vector<InteractionEvent> events;
    std::map<std::string, std::int64_t> oracle_user, oracle_article;
    for (int i = 0; i < 30; ++i) {
        const std::string user = "u" + std::to_string(prng.below(7));
        const std::string article = "art-" + std::to_string(prng.below(9));
        const auto likes = static_cast<std::int64_t>(prng.below(50));
        const auto rts = static_cast<std::int64_t>(prng.below(20));
        const auto replies = static_cast<std::int64_t>(prng.below(30));
        auto e = share("e" + std::to_string(i), user, "https://hs.fi/" + article,
                       Sentiment::neutral, replies);
        e.like_count = likes;
        e.retweet_count = rts;
        events.push_back(e);
        const std::int64_t v = 30 * likes + 20 * rts + replies;
        oracle_user[user] += v;
        oracle_article["hs.fi/" + article] += v;
    }
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto c = node_centrality(g);
    for (std::size_t i = 0; i < g.users.size(); ++i)
        CHECK(c.user[i] == oracle_user[g.users[i]]);
    for (std::size_t i = 0; i < g.articles.size(); ++i)
        CHECK(c.article[i] == oracle_article[g.articles[i].article_key]);
    CHECK(g.edges.size() == 30);
}

TEST_CASE("top_viral_news: ranking and ties") {
    std::vector<InteractionEvent> events = {
        share("1", "a", "https://hs.fi/big", Sentiment::neutral, 100),
        share("2", "b", "https://yle.fi/tie-b", Sentiment::neutral, 10),
        share("3", "c", "https://yle.fi/tie-a", Sentiment::neutral, 10),
    };
    const auto g = graphs::build_user_news_graph(events, kVirality);

    const auto top1 = top_viral_news(g, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0].first == "hs.fi/big");

    const auto all = top_viral_news(g, 99);
    REQUIRE(all.size() == 3); // k above article count returns everything
    CHECK(all[1].first == "yle.fi/tie-a");
    CHECK(all[2].first == "yle.fi/tie-b"); // tie broken by key ascending
}

TEST_CASE("group_sentiment_breakdown: reproduces the worked per-group counts") {
    // Fixture shaped like the most-viral-article discussion: 16 (pos 2,
    // neg 1) / 16 (pos 3, neg 2) / 33 (pos 2, neg 4) shares per group,
    // with per-group virality totals 78000 (pos 0, neg 55000), 27000
    // (0, 0), 48000 (0, 4000).
    synth::NewsStreamSpec spec;
    spec.seed = 1;
    const std::string url = "https://hs.fi/politiikka/art-1";

    synth::ArticlePlan plan;
    plan.url = url;
    auto fill = [&](const std::string& bloc, int pos, int neg, int neutral,
                    std::int64_t v_pos, std::int64_t v_neg, std::int64_t v_neutral) {
        std::vector<synth::ArticlePlanEntry> entries;
        for (int i = 0; i < pos; ++i)
            entries.push_back({Sentiment::positive, v_pos / pos + (i == 0 ? v_pos % pos : 0)});
        for (int i = 0; i < neg; ++i)
            entries.push_back({Sentiment::negative, v_neg / neg + (i == 0 ? v_neg % neg : 0)});
        for (int i = 0; i < neutral; ++i)
            entries.push_back(
                {Sentiment::neutral, v_neutral / neutral + (i == 0 ? v_neutral % neutral : 0)});
        plan.per_bloc[bloc] = std::move(entries);
    };
    fill("Conservative Right", 2, 1, 13, 0, 55000, 23000);
    fill("Liberal Left", 3, 2, 11, 0, 0, 27000);
    fill("Moderate Right", 2, 4, 27, 0, 4000, 44000);
    spec.plans.push_back(plan);

    // 70 users per bloc so the plan's round-robin never reuses a user.
    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 70; ++i)
            assignment.emplace_back("u" + std::to_string(b) + "_" + std::to_string(i),
                                    static_cast<std::uint32_t>(b));
    Partition partition = make_partition(std::move(assignment), 3);
    partition.labels = {"Conservative Right", "Liberal Left", "Moderate Right"};

    const auto events = synth::gen_news_sharing_events(spec, partition);
    CHECK(events.size() == 16 + 16 + 33);
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto b = group_sentiment_breakdown(g, partition, "hs.fi/politiikka/art-1");

    const auto* conri = b.find("Conservative Right");
    REQUIRE(conri != nullptr);
    CHECK(conri->tweet_count == 16);
    CHECK(conri->pos_count == 2);
    CHECK(conri->neg_count == 1);
    CHECK(conri->neutral_count == 13);
    CHECK(conri->virality_total == 78000);
    CHECK(conri->virality_pos == 0);
    CHECK(conri->virality_neg == 55000);

    const auto* lible = b.find("Liberal Left");
    CHECK(lible->tweet_count == 16);
    CHECK(lible->pos_count == 3);
    CHECK(lible->neg_count == 2);
    CHECK(lible->virality_total == 27000);
    CHECK(lible->virality_neg == 0);

    const auto* modri = b.find("Moderate Right");
    CHECK(modri->tweet_count == 33);
    CHECK(modri->pos_count == 2);
    CHECK(modri->neg_count == 4);
    CHECK(modri->virality_total == 48000);
    CHECK(modri->virality_neg == 4000);

    // Per-group invariants.
    for (const auto& [label, s] : b.groups) {
        CHECK(s.pos_count + s.neg_count + s.neutral_count == s.tweet_count);
        CHECK(s.virality_pos + s.virality_neg + s.virality_neutral == s.virality_total);
    }
    // Totals over groups equal whole-graph totals for the article.
    const auto totals = b.totals();
    CHECK(totals.tweet_count == 65);
    CHECK(totals.virality_total == 78000 + 27000 + 48000);
}

TEST_CASE("group_sentiment_breakdown: zero rows and error cases") {
    std::vector<InteractionEvent> events = {
        share("1", "a", "https://hs.fi/only", Sentiment::neutral, 3)};
    Partition p = make_partition({{"a", 0}, {"b", 1}}, 2);
    p.labels = {"G0", "G1"};
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto b = group_sentiment_breakdown(g, p, "hs.fi/only");
    const auto* g1 = b.find("G1");
    REQUIRE(g1 != nullptr);
    CHECK(g1->tweet_count == 0); // zero row present for the silent group
    const auto* np = b.find(kNonpartisanLabel);
    REQUIRE(np != nullptr);
    CHECK(np->tweet_count == 0);
    CHECK(b.find("G0")->virality_pos == 0);
    CHECK(b.find("G0")->virality_neg == 0); // all-neutral edges

    CHECK_THROWS_AS((void)group_sentiment_breakdown(g, p, "no.such/article"), DataError);
}

TEST_CASE("negativity_share: reproduces the 82% worked example") {
    // 11 negative shares holding 984 of the article's total 1200.
    synth::NewsStreamSpec spec;
    spec.seed = 2;
    synth::ArticlePlan plan;
    plan.url = "https://seiska.fi/uutiset/a-7";
    std::vector<synth::ArticlePlanEntry> conri;
    for (int i = 0; i < 11; ++i)
        conri.push_back({Sentiment::negative, i == 0 ? 984 - 89 * 10 : 89});
    for (int i = 0; i < 19; ++i)
        conri.push_back({Sentiment::neutral, i == 0 ? 216 - 11 * 18 : 11});
    plan.per_bloc["Conservative Right"] = conri;
    spec.plans.push_back(plan);

    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    for (int i = 0; i < 40; ++i)
        assignment.emplace_back("c" + std::to_string(i), 0u);
    Partition partition = make_partition(std::move(assignment), 1);
    partition.labels = {"Conservative Right"};

    const auto events = synth::gen_news_sharing_events(spec, partition);
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto b = group_sentiment_breakdown(g, partition, "seiska.fi/uutiset/a-7");
    CHECK(b.find("Conservative Right")->neg_count == 11);
    CHECK(b.totals().virality_total == 1200);

    const auto s = negativity_share(b, "Conservative Right");
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(0.82).epsilon(1e-9));
}

TEST_CASE("negativity_share: edge cases") {
    std::vector<InteractionEvent> events = {
        share("1", "a", "https://hs.fi/z", Sentiment::negative, 9)};
    Partition p = make_partition({{"a", 0}}, 1);
    p.labels = {"G"};
    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto b = group_sentiment_breakdown(g, p, "hs.fi/z");
    CHECK(*negativity_share(b, "G") == doctest::Approx(1.0)); // single negative edge

    std::vector<InteractionEvent> zero = {
        share("1", "a", "https://hs.fi/z", Sentiment::negative, 0)};
    const auto gz = graphs::build_user_news_graph(zero, kVirality);
    const auto bz = group_sentiment_breakdown(gz, p, "hs.fi/z");
    CHECK(!negativity_share(bz, "G").has_value()); // zero-virality article
}

TEST_CASE("outlet_table: distinct articles per group") {
    std::vector<InteractionEvent> events = {
        share("1", "a", "https://hs.fi/a/1", Sentiment::neutral, 1),
        share("2", "a", "https://hs.fi/a/2", Sentiment::neutral, 1),
        share("3", "a", "https://hs.fi/a/3", Sentiment::neutral, 1),
        share("4", "a", "https://yle.fi/a/1", Sentiment::neutral, 1),
    };
    // ten users of one group all sharing the same article counts once
    for (int i = 0; i < 10; ++i)
        events.push_back(share("dup" + std::to_string(i), "g2_" + std::to_string(i),
                               "https://il.fi/same", Sentiment::neutral, 1));

    std::vector<std::pair<std::string, std::uint32_t>> assignment = {{"a", 0}};
    for (int i = 0; i < 10; ++i) assignment.emplace_back("g2_" + std::to_string(i), 1u);
    Partition p = make_partition(std::move(assignment), 2);
    p.labels = {"G0", "G1"};

    const auto g = graphs::build_user_news_graph(events, kVirality);
    const auto rows = outlet_table(g, p);

    auto find = [&](const std::string& group, const std::string& outlet) -> const OutletRow* {
        for (const auto& r : rows)
            if (r.group == group && r.outlet == outlet) return &r;
        return nullptr;
    };
    REQUIRE(find("G0", "hs.fi") != nullptr);
    CHECK(find("G0", "hs.fi")->unique_articles == 3);
    CHECK(find("G0", "hs.fi")->rank == 1);
    CHECK(find("G0", "yle.fi")->unique_articles == 1);
    REQUIRE(find("G1", "il.fi") != nullptr);
    CHECK(find("G1", "il.fi")->unique_articles == 1); // counted once for the group
    CHECK(find("G1", "hs.fi") == nullptr);

    // top_n cut keeps the highest-count outlets
    const auto top1 = outlet_table(g, p, 1);
    for (const auto& r : top1) CHECK(r.rank == 1);
}
