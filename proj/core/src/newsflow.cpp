#include "polarscope/newsflow.hpp"

#include <algorithm>
#include <set>

#include "polarscope/errors.hpp"

namespace polarscope::newsflow {

std::int64_t virality(std::int64_t like_count, std::int64_t retweet_count,
                      std::int64_t reply_count) {
    if (like_count < 0 || retweet_count < 0 || reply_count < 0)
        throw DataError("virality: engagement counts must be non-negative");
    return 30 * like_count + 20 * retweet_count + reply_count;
}

Centrality node_centrality(const graphs::UserNewsGraph& g) {
    Centrality c;
    c.user.assign(g.users.size(), 0);
    c.article.assign(g.articles.size(), 0);
    for (const auto& e : g.edges) {
        c.user[e.user] += e.virality;
        c.article[e.article] += e.virality;
    }
    return c;
}

std::vector<std::pair<std::string, std::int64_t>> top_viral_news(
    const graphs::UserNewsGraph& g, std::size_t k) {
    const Centrality c = node_centrality(g);
    std::vector<std::pair<std::string, std::int64_t>> ranked;
    ranked.reserve(g.articles.size());
    for (std::size_t i = 0; i < g.articles.size(); ++i)
        ranked.emplace_back(g.articles[i].article_key, c.article[i]);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

const GroupStats* SentimentBreakdown::find(std::string_view label) const {
    for (const auto& [l, s] : groups)
        if (l == label) return &s;
    return nullptr;
}

GroupStats SentimentBreakdown::totals() const {
    GroupStats t;
    for (const auto& [l, s] : groups) {
        t.tweet_count += s.tweet_count;
        t.pos_count += s.pos_count;
        t.neg_count += s.neg_count;
        t.neutral_count += s.neutral_count;
        t.virality_total += s.virality_total;
        t.virality_pos += s.virality_pos;
        t.virality_neg += s.virality_neg;
        t.virality_neutral += s.virality_neutral;
    }
    return t;
}

namespace {

std::vector<std::string> group_row_labels(const Partition& partition) {
    std::vector<std::string> labels;
    for (std::uint32_t grp = 0; grp < partition.num_groups; ++grp) {
        const auto& l = partition.label_of(grp);
        labels.push_back(l.empty() ? "Group-" + std::to_string(grp) : l);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    labels.push_back(kNonpartisanLabel);
    return labels;
}

std::string edge_group_label(const graphs::UserNewsGraph& g, const Partition& partition,
                             const graphs::UserNewsGraph::Edge& e) {
    const auto grp = partition.group_of(g.users[e.user]);
    if (!grp) return kNonpartisanLabel;
    const auto& l = partition.label_of(*grp);
    return l.empty() ? "Group-" + std::to_string(*grp) : l;
}

} // namespace

SentimentBreakdown group_sentiment_breakdown(const graphs::UserNewsGraph& g,
                                             const Partition& partition,
                                             std::string_view article_key) {
    const auto idx = g.article_index(article_key);
    if (!idx) throw DataError("unknown article: " + std::string(article_key));

    SentimentBreakdown out;
    out.article_key = std::string(article_key);
    for (auto& label : group_row_labels(partition)) out.groups.emplace_back(label, GroupStats{});

    auto stats_of = [&](const std::string& label) -> GroupStats& {
        for (auto& [l, s] : out.groups)
            if (l == label) return s;
        out.groups.emplace_back(label, GroupStats{});
        return out.groups.back().second;
    };

    for (const auto& e : g.edges) {
        if (e.article != *idx) continue;
        GroupStats& s = stats_of(edge_group_label(g, partition, e));
        ++s.tweet_count;
        s.virality_total += e.virality;
        switch (e.sentiment) {
            case Sentiment::positive:
                ++s.pos_count;
                s.virality_pos += e.virality;
                break;
            case Sentiment::negative:
                ++s.neg_count;
                s.virality_neg += e.virality;
                break;
            case Sentiment::neutral:
                ++s.neutral_count;
                s.virality_neutral += e.virality;
                break;
        }
    }
    return out;
}

std::optional<double> negativity_share(const SentimentBreakdown& b,
                                       std::string_view group_label) {
    const GroupStats* s = b.find(group_label);
    const std::int64_t total = b.totals().virality_total;
    if (total == 0) return std::nullopt;
    if (!s) return 0.0;
    return static_cast<double>(s->virality_neg) / static_cast<double>(total);
}

std::vector<OutletRow> outlet_table(const graphs::UserNewsGraph& g,
                                    const Partition& partition, std::size_t top_n) {
    // group label -> outlet -> distinct article keys
    std::map<std::string, std::map<std::string, std::set<std::uint32_t>>> seen;
    for (const auto& e : g.edges) {
        const auto label = edge_group_label(g, partition, e);
        seen[label][g.articles[e.article].outlet].insert(e.article);
    }

    std::vector<OutletRow> out;
    for (const auto& label : group_row_labels(partition)) {
        const auto it = seen.find(label);
        if (it == seen.end()) continue;
        std::vector<std::pair<std::string, std::int64_t>> rows;
        for (const auto& [outlet, articles] : it->second)
            rows.emplace_back(outlet, static_cast<std::int64_t>(articles.size()));
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (top_n > 0 && rows.size() > top_n) rows.resize(top_n);
        std::int64_t rank = 1;
        for (auto& [outlet, count] : rows)
            out.push_back({label, outlet, count, rank++});
    }
    return out;
}

} // namespace polarscope::newsflow
