#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polarscope/events.hpp"
#include "polarscope/ingest.hpp"
#include "polarscope/url.hpp"

namespace polarscope {
struct Partition;
}

namespace polarscope::graphs {

/// Directed multigraph of retweet endorsements within one time window.
/// Nodes are exactly the endpoints of kept edges; self-retweets are
/// dropped and counted.
struct EndorsementGraph {
    ingest::TimeWindow window;
    std::vector<std::string> nodes; // sorted user ids

    struct Edge {
        std::uint32_t src = 0; // retweeter
        std::uint32_t dst = 0; // retweeted
        std::int64_t mult = 0;
    };
    std::vector<Edge> edges; // sorted by (src, dst)
    std::int64_t event_count = 0;
    std::int64_t self_loop_count = 0;

    std::optional<std::uint32_t> index_of(std::string_view user) const;
    bool empty() const { return nodes.empty(); }
};

EndorsementGraph build_endorsement_graph(std::span<const InteractionEvent> events,
                                         const ingest::TimeWindow& window);

/// Convenience overload for index subsets into a larger event store.
EndorsementGraph build_endorsement_graph(std::span<const InteractionEvent> all_events,
                                         std::span<const std::uint32_t> indices,
                                         const ingest::TimeWindow& window);

/// Collapse all multiplicities to 1.
EndorsementGraph binarize(const EndorsementGraph& g);

struct NewsArticle {
    std::string article_key;
    std::string outlet;
    std::int64_t first_seen = 0;
};

/// Bipartite user -> article sharing graph built from original tweets
/// that carry at least one canonicalizable URL.
struct UserNewsGraph {
    std::vector<std::string> users;    // sorted
    std::vector<NewsArticle> articles; // sorted by article_key

    struct Edge {
        std::uint32_t user = 0;
        std::uint32_t article = 0;
        Sentiment sentiment = Sentiment::neutral;
        std::int64_t virality = 0;
        std::string tweet_id;
    };
    std::vector<Edge> edges; // sorted by (user, article, tweet_id)

    std::int64_t rejected_urls = 0;
    std::int64_t missing_sentiment = 0; // absent sentiment mapped to neutral

    std::optional<std::uint32_t> article_index(std::string_view key) const;
};

using ViralityFn = std::function<std::int64_t(std::int64_t likes, std::int64_t retweets,
                                              std::int64_t replies)>;

UserNewsGraph build_user_news_graph(std::span<const InteractionEvent> events,
                                    const ViralityFn& virality,
                                    const url::CanonicalizeOptions& url_opts = {});

/// Active-user counts per group of `partition`, where active means
/// incident to at least one edge. Users absent from the partition are
/// non-partisan.
struct Participation {
    std::vector<std::int64_t> active_per_group; // indexed by group
    std::int64_t nonpartisan_count = 0;
    std::int64_t active_total = 0;
    double nonpartisan_share = 0.0; // 0 when no active users
};

Participation participation(const EndorsementGraph& g, const Partition& partition);

/// Keep only retweet events whose retweeted status carries at least one
/// canonicalizable URL. Requires the input to provide retweeted-status
/// URL data; throws UnsupportedInputError when no retweet in the input
/// carries the field.
struct NewsRetweetFilterResult {
    std::vector<std::uint32_t> kept; // event indices
    std::int64_t retweets_without_url_data = 0;
};
NewsRetweetFilterResult restrict_to_news_retweets(std::span<const InteractionEvent> events,
                                                  const url::CanonicalizeOptions& url_opts = {});
/// Same filter over a pre-selected index subset; `kept` holds indices
/// into `all_events`.
NewsRetweetFilterResult restrict_to_news_retweets(std::span<const InteractionEvent> all_events,
                                                  std::span<const std::uint32_t> indices,
                                                  const url::CanonicalizeOptions& url_opts = {});

enum class AccountFilterMode { all, candidates_only, exclude_candidates };

std::optional<AccountFilterMode> account_filter_from_string(std::string_view s);
const char* to_string(AccountFilterMode m);

/// Membership test on the authoring account only (retweets are filtered
/// by the retweeting account, not the retweeted one).
std::vector<std::uint32_t> filter_accounts(std::span<const InteractionEvent> events,
                                           AccountFilterMode mode,
                                           const std::vector<std::string>& sorted_seed_ids);
std::vector<std::uint32_t> filter_accounts(std::span<const InteractionEvent> all_events,
                                           std::span<const std::uint32_t> indices,
                                           AccountFilterMode mode,
                                           const std::vector<std::string>& sorted_seed_ids);

} // namespace polarscope::graphs
