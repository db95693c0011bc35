#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarscope/graphs.hpp"
#include "polarscope/partition.hpp"

namespace polarscope::newsflow {

/// Published engagement score: 30*likes + 20*retweets + 1*replies.
/// Exact integer arithmetic; throws DataError on negative input.
std::int64_t virality(std::int64_t like_count, std::int64_t retweet_count,
                      std::int64_t reply_count);

struct Centrality {
    std::vector<std::int64_t> user;    // aligned with graph.users
    std::vector<std::int64_t> article; // aligned with graph.articles
};

/// Virality-weighted incident sums for both sides of the bipartite graph.
Centrality node_centrality(const graphs::UserNewsGraph& g);

/// Articles ranked by centrality descending, ties by article_key
/// ascending; at most k entries.
std::vector<std::pair<std::string, std::int64_t>> top_viral_news(
    const graphs::UserNewsGraph& g, std::size_t k);

struct GroupStats {
    std::int64_t tweet_count = 0;
    std::int64_t pos_count = 0;
    std::int64_t neg_count = 0;
    std::int64_t neutral_count = 0;
    std::int64_t virality_total = 0;
    std::int64_t virality_pos = 0;
    std::int64_t virality_neg = 0;
    std::int64_t virality_neutral = 0;
};

constexpr const char* kNonpartisanLabel = "Nonpartisan";

/// Per-group sentiment/virality split for one article. Every partition
/// label appears (zeros included) plus a "Nonpartisan" row for sharers
/// outside the partition. Values are exact integers; any rounding is a
/// presentation concern.
struct SentimentBreakdown {
    std::string article_key;
    std::vector<std::pair<std::string, GroupStats>> groups; // label -> stats

    const GroupStats* find(std::string_view label) const;
    GroupStats totals() const;
};

/// Throws DataError when the article is not in the graph.
SentimentBreakdown group_sentiment_breakdown(const graphs::UserNewsGraph& g,
                                             const Partition& partition,
                                             std::string_view article_key);

/// Share of the article's total virality contributed by one group's
/// negative-sentiment shares; absent when total virality is 0.
std::optional<double> negativity_share(const SentimentBreakdown& b,
                                       std::string_view group_label);

struct OutletRow {
    std::string group;
    std::string outlet;
    std::int64_t unique_articles = 0;
    std::int64_t rank = 0; // 1-based within the group
};

/// Distinct articles shared by at least one member of each group,
/// counted per outlet; per group sorted by count descending then outlet
/// ascending, cut to top_n (0 = no cut). Group order: partition labels
/// sorted, then Nonpartisan.
std::vector<OutletRow> outlet_table(const graphs::UserNewsGraph& g,
                                    const Partition& partition, std::size_t top_n = 0);

} // namespace polarscope::newsflow
