#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polarscope/events.hpp"
#include "polarscope/partition.hpp"

namespace polarscope::synth {

struct BlocSpec {
    std::string label;
    std::int64_t size = 0;
};

/// Planted-bloc retweet stream. Relative endorsement propensities: a
/// retweet drawn for a source in bloc g targets a same-bloc user with
/// weight p_in per candidate and any other user with weight p_out per
/// candidate. activity_exponent > 0 gives power-law source activity.
struct PlantedStreamSpec {
    std::vector<BlocSpec> blocs; // sizes must sum to n_users
    std::int64_t n_users = 0;
    int weeks = 1;
    std::int64_t events_per_week = 0;
    double p_in = 0.5;
    double p_out = 0.5;
    double activity_exponent = 0.0;
    double label_noise = 0.0; // applied to the returned ground truth only
    std::uint64_t seed = 0;

    // Stream dressing for end-to-end fixtures.
    std::string topic_text;          // token embedded in every event text
    std::string id_prefix = "e";     // event ids: <id_prefix><counter>
    std::string user_prefix = "u";   // user ids: <user_prefix><index>
    std::int64_t start_time = 1577836800; // 2020-01-01T00:00:00Z

    /// Optional explicit universe: one id list per bloc (sizes then come
    /// from the lists). Lets several streams address one shared user
    /// pool.
    std::vector<std::vector<std::string>> bloc_members;

    /// When > 0, every retweet carries the retweeted_urls field and this
    /// fraction of them link a URL from the pool (the rest stay linkless).
    double retweeted_news_fraction = 0.0;
    std::vector<std::string> retweeted_url_pool;

    void validate() const; // throws ConfigError
};

struct PlantedStream {
    std::vector<InteractionEvent> events; // chronological
    Partition ground_truth;               // with bloc labels
};

/// Deterministic per seed: identical spec yields byte-identical streams.
PlantedStream gen_planted_retweet_stream(const PlantedStreamSpec& spec);

struct SentimentDist {
    double neg = 0.0;
    double neutral = 1.0;
    double pos = 0.0;

    void validate(const std::string& context) const; // sums to 1
};

struct EngagementMeans {
    double likes = 0.0;
    double retweets = 0.0;
    double replies = 0.0;
};

/// Exact construction of one article's shares for a bloc: one original
/// tweet per entry with the given sentiment and virality (realized as
/// reply_count so the score is exact).
struct ArticlePlanEntry {
    Sentiment sentiment = Sentiment::neutral;
    std::int64_t virality = 0;
};

struct ArticlePlan {
    std::string url;
    std::map<std::string, std::vector<ArticlePlanEntry>> per_bloc; // bloc label -> tweets
};

struct NewsStreamSpec {
    std::vector<std::string> article_urls;
    std::map<std::string, SentimentDist> sentiment_by_bloc;
    std::map<std::string, double> share_weight_by_bloc; // relative share rates
    std::map<std::string, EngagementMeans> engagement_by_bloc;
    std::int64_t total_events = 0;
    std::uint64_t seed = 0;
    std::string topic_text;
    std::string id_prefix = "n";
    std::int64_t start_time = 1577836800;
    std::int64_t duration_seconds = 7 * 86400;

    std::vector<ArticlePlan> plans; // exact-mode additions

    void validate() const;
};

/// Original tweets with one URL each; sentiment and engagement drawn per
/// the sharer's bloc. Plan entries are emitted verbatim. `partition`
/// assigns sharers to blocs via its labels.
std::vector<InteractionEvent> gen_news_sharing_events(const NewsStreamSpec& spec,
                                                      const Partition& partition);

/// Exact count of non-negative integer matrices with the given margins,
/// by exhaustive enumeration of row compositions (suffixes cached).
/// Budget: total (sum of row margins) <= 14; throws DataError beyond.
std::uint64_t oracle_count_tables(std::span<const std::int64_t> row_sums,
                                  std::span<const std::int64_t> col_sums);

} // namespace polarscope::synth
