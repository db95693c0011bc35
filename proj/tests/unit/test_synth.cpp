#include <doctest.h>

#include <sstream>

#include "polarscope/errors.hpp"
#include "polarscope/ingest.hpp"
#include "polarscope/polarization.hpp"
#include "polarscope/synth.hpp"

using namespace polarscope;
using namespace polarscope::synth;

namespace {

const ingest::TimeWindow kWin{0, 0, 100000000};

std::string serialize(const std::vector<InteractionEvent>& events) {
    std::ostringstream out;
    ingest::write_events(out, events, ingest::EventFormat::jsonl);
    return out.str();
}

PlantedStreamSpec base_spec(std::uint64_t seed) {
    PlantedStreamSpec spec;
    spec.blocs = {{"x", 25}, {"y", 25}};
    spec.n_users = 50;
    spec.weeks = 3;
    spec.events_per_week = 300;
    spec.p_in = 0.8;
    spec.p_out = 0.2;
    spec.seed = seed;
    spec.topic_text = "aihe";
    return spec;
}

} // namespace

TEST_CASE("planted stream: byte-identical per seed, different across seeds") {
    const auto a = gen_planted_retweet_stream(base_spec(42));
    const auto b = gen_planted_retweet_stream(base_spec(42));
    CHECK(serialize(a.events) == serialize(b.events));
    CHECK(a.ground_truth.groups == b.ground_truth.groups);

    const auto c = gen_planted_retweet_stream(base_spec(43));
    CHECK(serialize(a.events) != serialize(c.events));
}

TEST_CASE("planted stream: events satisfy all invariants (parse round trip)") {
    const auto stream = gen_planted_retweet_stream(base_spec(7));
    ingest::ParseReport rep;
    std::istringstream in(serialize(stream.events));
    const auto parsed = ingest::parse_events(in, ingest::EventFormat::jsonl, rep);
    CHECK(rep.rejected == 0);
    CHECK(parsed.size() == stream.events.size());
    for (const auto& e : parsed) {
        CHECK(e.kind == EventKind::retweet);
        CHECK(!e.retweeted_author_id.empty());
        CHECK(e.author_id != e.retweeted_author_id); // no self-retweets generated
        CHECK(e.text.find("aihe") != std::string::npos);
    }
}

TEST_CASE("planted stream: p_out = 0 gives aei exactly +1") {
    auto spec = base_spec(11);
    spec.p_out = 0.0;
    const auto stream = gen_planted_retweet_stream(spec);
    const auto g = graphs::build_endorsement_graph(stream.events, kWin);
    const auto r = polarization::aei(g, stream.ground_truth, 0, 1);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == doctest::Approx(1.0));
    CHECK(r.m_out == 0);
}

TEST_CASE("planted stream: p_in = p_out gives aei near 0 over seeds") {
    double total = 0.0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        auto spec = base_spec(2000 + static_cast<std::uint64_t>(s));
        spec.p_in = 0.5;
        spec.p_out = 0.5;
        spec.events_per_week = 2000;
        spec.weeks = 1;
        const auto stream = gen_planted_retweet_stream(spec);
        const auto g = graphs::build_endorsement_graph(stream.events, kWin);
        const auto r = polarization::aei(g, stream.ground_truth, 0, 1);
        total += *r.value;
    }
    CHECK(total / seeds == doctest::Approx(0.0).epsilon(0.02));
}

TEST_CASE("planted stream: label noise hits the returned truth only") {
    auto spec = base_spec(5);
    spec.label_noise = 0.2;
    const auto noisy = gen_planted_retweet_stream(spec);
    spec.label_noise = 0.0;
    const auto clean = gen_planted_retweet_stream(spec);
    CHECK(serialize(noisy.events) == serialize(clean.events)); // events unaffected
    std::int64_t differs = 0;
    for (std::size_t i = 0; i < clean.ground_truth.groups.size(); ++i)
        if (clean.ground_truth.groups[i] != noisy.ground_truth.groups[i]) ++differs;
    CHECK(differs > 0);
    CHECK(differs <= 10); // at most noise*n flips (some draw the same group)
}

TEST_CASE("planted stream: spec validation") {
    auto bad = base_spec(1);
    bad.blocs[0].size = 10; // sizes no longer sum to n_users
    CHECK_THROWS_AS((void)gen_planted_retweet_stream(bad), ConfigError);
    auto bad2 = base_spec(1);
    bad2.p_in = 0.0;
    CHECK_THROWS_AS((void)gen_planted_retweet_stream(bad2), ConfigError);
    auto bad3 = base_spec(1);
    bad3.label_noise = 1.0;
    CHECK_THROWS_AS((void)gen_planted_retweet_stream(bad3), ConfigError);
}

TEST_CASE("planted stream: explicit bloc membership") {
    PlantedStreamSpec spec;
    spec.blocs = {{"x", 0}, {"y", 0}};
    spec.bloc_members = {{"alice", "bob", "carol"}, {"dave", "erin", "frank"}};
    spec.weeks = 1;
    spec.events_per_week = 200;
    spec.p_in = 1.0;
    spec.p_out = 0.0;
    spec.seed = 9;
    const auto stream = gen_planted_retweet_stream(spec);
    for (const auto& e : stream.events) {
        const bool src_x = e.author_id == "alice" || e.author_id == "bob" || e.author_id == "carol";
        const bool dst_x = e.retweeted_author_id == "alice" || e.retweeted_author_id == "bob" ||
                           e.retweeted_author_id == "carol";
        CHECK(src_x == dst_x); // p_out = 0: never crosses blocs
    }
    CHECK(stream.ground_truth.users.size() == 6);
}

TEST_CASE("news stream: bloc with all-negative sentiment and zero share rate") {
    NewsStreamSpec spec;
    spec.seed = 3;
    spec.article_urls = {"https://hs.fi/a", "https://yle.fi/b"};
    spec.total_events = 400;
    spec.sentiment_by_bloc["OnlyNeg"] = {1.0, 0.0, 0.0};
    spec.sentiment_by_bloc["Quiet"] = {0.0, 1.0, 0.0};
    spec.share_weight_by_bloc["OnlyNeg"] = 1.0;
    spec.share_weight_by_bloc["Quiet"] = 0.0;

    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    for (int i = 0; i < 10; ++i) assignment.emplace_back("n" + std::to_string(i), 0u);
    for (int i = 0; i < 10; ++i) assignment.emplace_back("q" + std::to_string(i), 1u);
    Partition p = make_partition(std::move(assignment), 2);
    p.labels = {"OnlyNeg", "Quiet"};

    const auto events = gen_news_sharing_events(spec, p);
    CHECK(events.size() == 400);
    for (const auto& e : events) {
        CHECK(e.kind == EventKind::original);
        CHECK(e.urls.size() == 1);
        REQUIRE(e.sentiment.has_value());
        CHECK(*e.sentiment == Sentiment::negative); // OnlyNeg's distribution
        CHECK(e.author_id[0] == 'n');               // Quiet never shares
    }
}

TEST_CASE("news stream: deterministic per seed") {
    NewsStreamSpec spec;
    spec.seed = 77;
    spec.article_urls = {"https://hs.fi/a"};
    spec.total_events = 50;
    spec.sentiment_by_bloc["B"] = {0.2, 0.5, 0.3};
    spec.share_weight_by_bloc["B"] = 1.0;
    spec.engagement_by_bloc["B"] = {2.0, 1.0, 0.5};
    Partition p = make_partition({{"u1", 0}, {"u2", 0}}, 1);
    p.labels = {"B"};
    const auto a = gen_news_sharing_events(spec, p);
    const auto b = gen_news_sharing_events(spec, p);
    CHECK(serialize(a) == serialize(b));
}

TEST_CASE("oracle_count_tables: worked examples") {
    const std::vector<std::int64_t> two2{2, 2};
    CHECK(oracle_count_tables(two2, two2) == 3);
    const std::vector<std::int64_t> n1{7};
    CHECK(oracle_count_tables(n1, n1) == 1);
    const std::vector<std::int64_t> ones{1, 1, 1};
    CHECK(oracle_count_tables(ones, ones) == 6);
}
