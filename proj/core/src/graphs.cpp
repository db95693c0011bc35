#include "polarscope/graphs.hpp"

#include <algorithm>

#include "polarscope/errors.hpp"
#include "polarscope/partition.hpp"

namespace polarscope::graphs {

std::optional<std::uint32_t> EndorsementGraph::index_of(std::string_view user) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), user);
    if (it == nodes.end() || *it != user) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

namespace {

EndorsementGraph build_from_pairs(
    std::vector<std::pair<const std::string*, const std::string*>>& pairs,
    std::int64_t self_loops, const ingest::TimeWindow& window) {
    EndorsementGraph g;
    g.window = window;
    g.self_loop_count = self_loops;

    g.nodes.reserve(pairs.size() * 2);
    for (const auto& [a, b] : pairs) {
        g.nodes.push_back(*a);
        g.nodes.push_back(*b);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());

    std::vector<std::pair<std::uint32_t, std::uint32_t>> idx_pairs;
    idx_pairs.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        idx_pairs.emplace_back(*g.index_of(*a), *g.index_of(*b));
    std::sort(idx_pairs.begin(), idx_pairs.end());

    for (std::size_t i = 0; i < idx_pairs.size();) {
        std::size_t j = i;
        while (j < idx_pairs.size() && idx_pairs[j] == idx_pairs[i]) ++j;
        g.edges.push_back({idx_pairs[i].first, idx_pairs[i].second,
                           static_cast<std::int64_t>(j - i)});
        g.event_count += static_cast<std::int64_t>(j - i);
        i = j;
    }
    return g;
}

} // namespace

EndorsementGraph build_endorsement_graph(std::span<const InteractionEvent> events,
                                         const ingest::TimeWindow& window) {
    std::vector<std::pair<const std::string*, const std::string*>> pairs;
    std::int64_t self_loops = 0;
    for (const auto& e : events) {
        if (e.kind != EventKind::retweet) continue;
        if (e.author_id == e.retweeted_author_id) { ++self_loops; continue; }
        pairs.emplace_back(&e.author_id, &e.retweeted_author_id);
    }
    return build_from_pairs(pairs, self_loops, window);
}

EndorsementGraph build_endorsement_graph(std::span<const InteractionEvent> all_events,
                                         std::span<const std::uint32_t> indices,
                                         const ingest::TimeWindow& window) {
    std::vector<std::pair<const std::string*, const std::string*>> pairs;
    std::int64_t self_loops = 0;
    for (const std::uint32_t i : indices) {
        const auto& e = all_events[i];
        if (e.kind != EventKind::retweet) continue;
        if (e.author_id == e.retweeted_author_id) { ++self_loops; continue; }
        pairs.emplace_back(&e.author_id, &e.retweeted_author_id);
    }
    return build_from_pairs(pairs, self_loops, window);
}

EndorsementGraph binarize(const EndorsementGraph& g) {
    EndorsementGraph out = g;
    out.event_count = 0;
    for (auto& e : out.edges) {
        e.mult = 1;
        ++out.event_count;
    }
    return out;
}

std::optional<std::uint32_t> UserNewsGraph::article_index(std::string_view key) const {
    const auto it = std::lower_bound(
        articles.begin(), articles.end(), key,
        [](const NewsArticle& a, std::string_view k) { return a.article_key < k; });
    if (it == articles.end() || it->article_key != key) return std::nullopt;
    return static_cast<std::uint32_t>(it - articles.begin());
}

UserNewsGraph build_user_news_graph(std::span<const InteractionEvent> events,
                                    const ViralityFn& virality,
                                    const url::CanonicalizeOptions& url_opts) {
    struct RawEdge {
        std::string user;
        std::string key;
        std::string outlet;
        Sentiment sentiment;
        std::int64_t virality;
        std::string tweet_id;
        std::int64_t seen;
    };
    std::vector<RawEdge> raw;
    UserNewsGraph g;

    for (const auto& e : events) {
        if (e.kind != EventKind::original) continue;
        // One edge per (tweet, distinct article_key).
        std::vector<std::pair<std::string, std::string>> keys; // (key, outlet)
        for (const auto& u : e.urls) {
            auto res = url::canonicalize_url(u, url_opts);
            if (!res.value) { ++g.rejected_urls; continue; }
            keys.emplace_back(res.value->article_key, res.value->outlet);
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        if (keys.empty()) continue;
        Sentiment s = Sentiment::neutral;
        if (e.sentiment) s = *e.sentiment;
        else ++g.missing_sentiment;
        const std::int64_t v = virality(e.like_count, e.retweet_count, e.reply_count);
        for (auto& [key, outlet] : keys)
            raw.push_back({e.author_id, key, outlet, s, v, e.id, e.created_at});
    }

    std::vector<std::string> users;
    for (const auto& r : raw) users.push_back(r.user);
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    g.users = std::move(users);

    std::map<std::string, NewsArticle> articles;
    for (const auto& r : raw) {
        auto [it, inserted] = articles.try_emplace(r.key, NewsArticle{r.key, r.outlet, r.seen});
        if (!inserted && r.seen < it->second.first_seen) it->second.first_seen = r.seen;
    }
    g.articles.reserve(articles.size());
    for (auto& [key, a] : articles) g.articles.push_back(std::move(a));

    for (const auto& r : raw) {
        const auto uit = std::lower_bound(g.users.begin(), g.users.end(), r.user);
        UserNewsGraph::Edge edge;
        edge.user = static_cast<std::uint32_t>(uit - g.users.begin());
        edge.article = *g.article_index(r.key);
        edge.sentiment = r.sentiment;
        edge.virality = r.virality;
        edge.tweet_id = r.tweet_id;
        g.edges.push_back(std::move(edge));
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.user, a.article, a.tweet_id) < std::tie(b.user, b.article, b.tweet_id);
    });
    return g;
}

Participation participation(const EndorsementGraph& g, const Partition& partition) {
    Participation p;
    p.active_per_group.assign(partition.num_groups, 0);
    p.active_total = static_cast<std::int64_t>(g.nodes.size());
    for (const auto& user : g.nodes) {
        const auto grp = partition.group_of(user);
        if (grp) ++p.active_per_group[*grp];
        else ++p.nonpartisan_count;
    }
    p.nonpartisan_share =
        p.active_total > 0
            ? static_cast<double>(p.nonpartisan_count) / static_cast<double>(p.active_total)
            : 0.0;
    return p;
}

NewsRetweetFilterResult restrict_to_news_retweets(std::span<const InteractionEvent> all_events,
                                                  std::span<const std::uint32_t> indices,
                                                  const url::CanonicalizeOptions& url_opts) {
    NewsRetweetFilterResult out;
    std::int64_t retweets = 0, with_field = 0;
    for (const std::uint32_t i : indices) {
        const auto& e = all_events[i];
        if (e.kind != EventKind::retweet) continue;
        ++retweets;
        if (!e.retweeted_urls) { ++out.retweets_without_url_data; continue; }
        ++with_field;
        bool has_news = false;
        for (const auto& u : *e.retweeted_urls) {
            if (url::canonicalize_url(u, url_opts).value) { has_news = true; break; }
        }
        if (has_news) out.kept.push_back(i);
    }
    if (retweets > 0 && with_field == 0)
        throw UnsupportedInputError(
            "retweets-with-news requires retweeted-status URL data (field "
            "'retweeted_urls'), which this input does not provide");
    return out;
}

NewsRetweetFilterResult restrict_to_news_retweets(std::span<const InteractionEvent> events,
                                                  const url::CanonicalizeOptions& url_opts) {
    std::vector<std::uint32_t> identity(events.size());
    for (std::uint32_t i = 0; i < events.size(); ++i) identity[i] = i;
    return restrict_to_news_retweets(events, identity, url_opts);
}

std::optional<AccountFilterMode> account_filter_from_string(std::string_view s) {
    if (s == "all") return AccountFilterMode::all;
    if (s == "candidates-only" || s == "candidates_only") return AccountFilterMode::candidates_only;
    if (s == "exclude-candidates" || s == "exclude_candidates")
        return AccountFilterMode::exclude_candidates;
    return std::nullopt;
}

const char* to_string(AccountFilterMode m) {
    switch (m) {
        case AccountFilterMode::all: return "all";
        case AccountFilterMode::candidates_only: return "candidates-only";
        case AccountFilterMode::exclude_candidates: return "exclude-candidates";
    }
    return "all";
}

std::vector<std::uint32_t> filter_accounts(std::span<const InteractionEvent> all_events,
                                           std::span<const std::uint32_t> indices,
                                           AccountFilterMode mode,
                                           const std::vector<std::string>& sorted_seed_ids) {
    std::vector<std::uint32_t> out;
    out.reserve(indices.size());
    for (const std::uint32_t i : indices) {
        const bool is_seed = std::binary_search(sorted_seed_ids.begin(), sorted_seed_ids.end(),
                                                all_events[i].author_id);
        const bool keep = mode == AccountFilterMode::all ||
                          (mode == AccountFilterMode::candidates_only && is_seed) ||
                          (mode == AccountFilterMode::exclude_candidates && !is_seed);
        if (keep) out.push_back(i);
    }
    return out;
}

std::vector<std::uint32_t> filter_accounts(std::span<const InteractionEvent> events,
                                           AccountFilterMode mode,
                                           const std::vector<std::string>& sorted_seed_ids) {
    std::vector<std::uint32_t> identity(events.size());
    for (std::uint32_t i = 0; i < events.size(); ++i) identity[i] = i;
    return filter_accounts(events, identity, mode, sorted_seed_ids);
}

} // namespace polarscope::graphs
