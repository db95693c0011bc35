#include "polarscope/synth.hpp"

#include <algorithm>
#include <cmath>

#include "polarscope/errors.hpp"
#include "polarscope/prng.hpp"

namespace polarscope::synth {

namespace {

std::string padded_id(const std::string& prefix, std::int64_t value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width)
        digits.insert(0, static_cast<std::size_t>(width - digits.size()), '0');
    return prefix + digits;
}

int width_for(std::int64_t count) {
    int w = 1;
    for (std::int64_t x = 10; x <= count; x *= 10) ++w;
    return w;
}

/// Geometric draw with the given mean (0 -> always 0).
std::int64_t geometric(rng::Prng& prng, double mean) {
    if (mean <= 0.0) return 0;
    const double p = mean / (mean + 1.0);
    const double u = prng.uniform01();
    return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log(p)));
}

} // namespace

void PlantedStreamSpec::validate() const {
    if (blocs.empty()) throw ConfigError("planted stream: at least one bloc required");
    if (!bloc_members.empty() && bloc_members.size() != blocs.size())
        throw ConfigError("planted stream: bloc_members must match blocs");
    std::int64_t total = 0;
    for (std::size_t b = 0; b < blocs.size(); ++b) {
        const std::int64_t size =
            bloc_members.empty() ? blocs[b].size
                                 : static_cast<std::int64_t>(bloc_members[b].size());
        if (size < 1) throw ConfigError("planted stream: bloc sizes must be >= 1");
        if (blocs[b].label.empty())
            throw ConfigError("planted stream: bloc labels must be non-empty");
        total += size;
    }
    const std::int64_t expected = bloc_members.empty() ? n_users : total;
    if (expected < 2) throw ConfigError("planted stream: need at least 2 users");
    if (total != expected)
        throw ConfigError("planted stream: bloc sizes sum to " + std::to_string(total) +
                          ", expected n_users = " + std::to_string(expected));
    if (weeks < 1) throw ConfigError("planted stream: weeks must be >= 1");
    if (events_per_week < 0) throw ConfigError("planted stream: events_per_week must be >= 0");
    if (p_in <= 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw ConfigError("planted stream: propensities must lie in (0,1] / [0,1]");
    if (label_noise < 0.0 || label_noise >= 1.0)
        throw ConfigError("planted stream: label_noise must lie in [0,1)");
    if (retweeted_news_fraction < 0.0 || retweeted_news_fraction > 1.0)
        throw ConfigError("planted stream: retweeted_news_fraction must lie in [0,1]");
    if (retweeted_news_fraction > 0.0 && retweeted_url_pool.empty())
        throw ConfigError("planted stream: retweeted_url_pool required when "
                          "retweeted_news_fraction > 0");
}

PlantedStream gen_planted_retweet_stream(const PlantedStreamSpec& spec) {
    spec.validate();

    // Universe: generated contiguous ids, or the explicit member lists.
    std::vector<std::string> users;
    std::vector<std::uint32_t> bloc_of;
    if (spec.bloc_members.empty()) {
        const int id_width = width_for(spec.n_users);
        users.reserve(static_cast<std::size_t>(spec.n_users));
        std::int64_t at = 0;
        for (std::uint32_t b = 0; b < spec.blocs.size(); ++b)
            for (std::int64_t i = 0; i < spec.blocs[b].size; ++i) {
                users.push_back(padded_id(spec.user_prefix, at++, id_width));
                bloc_of.push_back(b);
            }
    } else {
        for (std::uint32_t b = 0; b < spec.bloc_members.size(); ++b)
            for (const auto& id : spec.bloc_members[b]) {
                users.push_back(id);
                bloc_of.push_back(b);
            }
    }
    const std::int64_t n = static_cast<std::int64_t>(users.size());

    // Per-bloc member indices (sorted) and each user's rank in its bloc.
    std::vector<std::vector<std::int64_t>> members(spec.blocs.size());
    std::vector<std::int64_t> bloc_rank(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        auto& m = members[bloc_of[static_cast<std::size_t>(i)]];
        bloc_rank[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(m.size());
        m.push_back(i);
    }

    // Power-law activity over a seeded rank permutation so activity does
    // not correlate with bloc membership.
    rng::Prng activity_rng(rng::derive(spec.seed, "activity"));
    std::vector<std::uint32_t> rank(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    activity_rng.shuffle(rank);
    std::vector<double> cum(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double w = spec.activity_exponent == 0.0
                             ? 1.0
                             : std::pow(static_cast<double>(rank[static_cast<std::size_t>(i)]) + 1.0,
                                        -spec.activity_exponent);
        acc += w;
        cum[static_cast<std::size_t>(i)] = acc;
    }

    rng::Prng prng(rng::derive(spec.seed, "events"));
    PlantedStream out;
    const std::int64_t total_events =
        static_cast<std::int64_t>(spec.weeks) * spec.events_per_week;
    out.events.reserve(static_cast<std::size_t>(total_events));
    const int ev_width = width_for(std::max<std::int64_t>(total_events, 1));
    constexpr std::int64_t kWeek = 7 * 86400;

    std::int64_t counter = 0;
    for (int week = 0; week < spec.weeks; ++week) {
        const std::int64_t week_start = spec.start_time + week * kWeek;
        std::vector<InteractionEvent> batch;
        batch.reserve(static_cast<std::size_t>(spec.events_per_week));
        for (std::int64_t k = 0; k < spec.events_per_week; ++k) {
            const auto src = static_cast<std::int64_t>(prng.pick_cumulative(cum));
            const auto bloc = bloc_of[static_cast<std::size_t>(src)];
            const auto& mine = members[bloc];
            const std::int64_t bloc_size = static_cast<std::int64_t>(mine.size());
            const std::int64_t in_candidates = bloc_size - 1;
            const std::int64_t out_candidates = n - bloc_size;
            const double w_in = static_cast<double>(in_candidates) * spec.p_in;
            const double w_out = static_cast<double>(out_candidates) * spec.p_out;
            std::int64_t dst;
            if (w_in + w_out <= 0.0) continue; // isolated universe; nothing to endorse
            if (prng.uniform01() * (w_in + w_out) < w_in) {
                // uniform same-bloc member, skipping the source
                std::int64_t pick = static_cast<std::int64_t>(
                    prng.below(static_cast<std::uint64_t>(in_candidates)));
                if (pick >= bloc_rank[static_cast<std::size_t>(src)]) ++pick;
                dst = mine[static_cast<std::size_t>(pick)];
            } else {
                // k-th user (global index order) outside the bloc: binary
                // search on "non-members at or below x".
                const std::int64_t k_out = static_cast<std::int64_t>(
                    prng.below(static_cast<std::uint64_t>(out_candidates)));
                std::int64_t lo_i = 0, hi_i = n - 1;
                while (lo_i < hi_i) {
                    const std::int64_t mid = (lo_i + hi_i) / 2;
                    const auto members_le = static_cast<std::int64_t>(
                        std::upper_bound(mine.begin(), mine.end(), mid) - mine.begin());
                    if (mid + 1 - members_le >= k_out + 1) hi_i = mid;
                    else lo_i = mid + 1;
                }
                dst = lo_i;
            }
            InteractionEvent e;
            e.id = padded_id(spec.id_prefix, counter, ev_width);
            e.created_at = week_start + static_cast<std::int64_t>(
                                            prng.below(static_cast<std::uint64_t>(kWeek)));
            e.author_id = users[static_cast<std::size_t>(src)];
            e.kind = EventKind::retweet;
            e.retweeted_author_id = users[static_cast<std::size_t>(dst)];
            e.retweeted_status_id = "s" + e.id;
            e.text = spec.topic_text.empty() ? "rt " + e.id : spec.topic_text + " " + e.id;
            if (spec.retweeted_news_fraction > 0.0) {
                e.retweeted_urls = std::vector<std::string>{};
                if (prng.uniform01() < spec.retweeted_news_fraction)
                    e.retweeted_urls->push_back(
                        spec.retweeted_url_pool[prng.below(spec.retweeted_url_pool.size())]);
            }
            ++counter;
            batch.push_back(std::move(e));
        }
        std::stable_sort(batch.begin(), batch.end(),
                         [](const auto& a, const auto& b) { return a.created_at < b.created_at; });
        for (auto& e : batch) out.events.push_back(std::move(e));
    }

    // Ground truth, with label noise applied to the returned labels only.
    std::vector<std::uint32_t> truth = bloc_of;
    if (spec.label_noise > 0.0) {
        rng::Prng noise_rng(rng::derive(spec.seed, "label-noise"));
        const auto flips = static_cast<std::int64_t>(
            std::floor(spec.label_noise * static_cast<double>(n)));
        std::vector<std::uint32_t> order(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
        noise_rng.shuffle(order);
        for (std::int64_t i = 0; i < flips; ++i)
            truth[order[static_cast<std::size_t>(i)]] = static_cast<std::uint32_t>(
                noise_rng.below(spec.blocs.size()));
    }
    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    assignment.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        assignment.emplace_back(users[static_cast<std::size_t>(i)],
                                truth[static_cast<std::size_t>(i)]);
    out.ground_truth =
        make_partition(std::move(assignment), static_cast<std::uint32_t>(spec.blocs.size()));
    for (const auto& b : spec.blocs) out.ground_truth.labels.push_back(b.label);
    return out;
}

void SentimentDist::validate(const std::string& context) const {
    if (neg < 0 || neutral < 0 || pos < 0 || std::abs(neg + neutral + pos - 1.0) > 1e-9)
        throw ConfigError(context + ": sentiment distribution must sum to 1");
}

void NewsStreamSpec::validate() const {
    if (total_events > 0 && article_urls.empty())
        throw ConfigError("news stream: article_urls required when total_events > 0");
    for (const auto& [bloc, dist] : sentiment_by_bloc) dist.validate("bloc " + bloc);
    for (const auto& [bloc, w] : share_weight_by_bloc)
        if (w < 0) throw ConfigError("news stream: negative share weight for bloc " + bloc);
    if (total_events < 0) throw ConfigError("news stream: total_events must be >= 0");
    if (duration_seconds < 1) throw ConfigError("news stream: duration must be positive");
}

std::vector<InteractionEvent> gen_news_sharing_events(const NewsStreamSpec& spec,
                                                      const Partition& partition) {
    spec.validate();

    // Users per bloc label, in partition (sorted) order.
    std::map<std::string, std::vector<std::uint32_t>> members;
    for (std::size_t i = 0; i < partition.users.size(); ++i) {
        const auto& label = partition.label_of(partition.groups[i]);
        members[label.empty() ? "Group-" + std::to_string(partition.groups[i]) : label]
            .push_back(static_cast<std::uint32_t>(i));
    }

    std::vector<InteractionEvent> out;
    rng::Prng prng(rng::derive(spec.seed, "news"));
    std::int64_t counter = 0;
    const int ev_width =
        width_for(std::max<std::int64_t>(spec.total_events + 256, 1));

    auto make_event = [&](std::uint32_t user_idx, const std::string& url, Sentiment s) {
        InteractionEvent e;
        e.id = padded_id(spec.id_prefix, counter++, ev_width);
        e.created_at = spec.start_time + static_cast<std::int64_t>(prng.below(
                                             static_cast<std::uint64_t>(spec.duration_seconds)));
        e.author_id = partition.users[user_idx];
        e.kind = EventKind::original;
        e.urls = {url};
        e.sentiment = s;
        e.text = spec.topic_text.empty() ? "news " + e.id : spec.topic_text + " " + e.id;
        return e;
    };

    // Exact plans first: deterministic round-robin over bloc members.
    for (const auto& plan : spec.plans) {
        for (const auto& [bloc, entries] : plan.per_bloc) {
            const auto it = members.find(bloc);
            if (it == members.end() || it->second.empty())
                throw ConfigError("news stream plan: no users in bloc '" + bloc + "'");
            std::size_t cursor = 0;
            for (const auto& entry : entries) {
                if (entry.virality < 0)
                    throw ConfigError("news stream plan: negative virality");
                auto e = make_event(it->second[cursor % it->second.size()], plan.url,
                                    entry.sentiment);
                e.reply_count = entry.virality; // 1 * replies realizes the score exactly
                out.push_back(std::move(e));
                ++cursor;
            }
        }
    }

    // Random part.
    if (spec.total_events > 0) {
        std::vector<std::string> blocs;
        std::vector<double> cum;
        double acc = 0.0;
        for (const auto& [bloc, weight] : spec.share_weight_by_bloc) {
            const auto it = members.find(bloc);
            if (it == members.end()) continue;
            const double w = weight * static_cast<double>(it->second.size());
            if (w <= 0.0) continue;
            blocs.push_back(bloc);
            acc += w;
            cum.push_back(acc);
        }
        if (blocs.empty())
            throw ConfigError("news stream: no bloc has positive share weight and members");
        for (std::int64_t k = 0; k < spec.total_events; ++k) {
            const auto& bloc = blocs[prng.pick_cumulative(cum)];
            const auto& pool = members.at(bloc);
            const auto user = pool[prng.below(pool.size())];
            const auto& url =
                spec.article_urls[prng.below(spec.article_urls.size())];
            SentimentDist dist;
            if (const auto it = spec.sentiment_by_bloc.find(bloc);
                it != spec.sentiment_by_bloc.end())
                dist = it->second;
            const double u = prng.uniform01();
            const Sentiment s = u < dist.neg                ? Sentiment::negative
                                : u < dist.neg + dist.neutral ? Sentiment::neutral
                                                              : Sentiment::positive;
            auto e = make_event(user, url, s);
            EngagementMeans means;
            if (const auto it = spec.engagement_by_bloc.find(bloc);
                it != spec.engagement_by_bloc.end())
                means = it->second;
            e.like_count = geometric(prng, means.likes);
            e.retweet_count = geometric(prng, means.retweets);
            e.reply_count = geometric(prng, means.replies);
            out.push_back(std::move(e));
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.created_at < b.created_at; });
    return out;
}

namespace {

struct OracleCounter {
    std::span<const std::int64_t> rows;
    std::map<std::pair<std::size_t, std::vector<std::int64_t>>, std::uint64_t> memo;

    std::uint64_t count(std::size_t row, const std::vector<std::int64_t>& cols_left) {
        if (row == rows.size()) {
            for (const auto c : cols_left)
                if (c != 0) return 0;
            return 1;
        }
        const auto key = std::make_pair(row, cols_left);
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<std::int64_t> next = cols_left;
        const std::uint64_t total = enumerate(row, next, 0, rows[row]);
        memo.emplace(key, total);
        return total;
    }

    std::uint64_t enumerate(std::size_t row, std::vector<std::int64_t>& cols_left,
                            std::size_t col, std::int64_t left) {
        if (col + 1 == cols_left.size()) {
            if (left > cols_left[col]) return 0;
            cols_left[col] -= left;
            const std::uint64_t r = count(row + 1, cols_left);
            cols_left[col] += left;
            return r;
        }
        std::uint64_t total = 0;
        const std::int64_t hi = std::min(left, cols_left[col]);
        for (std::int64_t x = 0; x <= hi; ++x) {
            cols_left[col] -= x;
            total += enumerate(row, cols_left, col + 1, left - x);
            cols_left[col] += x;
        }
        return total;
    }
};

} // namespace

std::uint64_t oracle_count_tables(std::span<const std::int64_t> row_sums,
                                  std::span<const std::int64_t> col_sums) {
    std::int64_t rsum = 0, csum = 0;
    for (const auto v : row_sums) {
        if (v < 0) throw DataError("oracle_count_tables: negative margin");
        rsum += v;
    }
    for (const auto v : col_sums) {
        if (v < 0) throw DataError("oracle_count_tables: negative margin");
        csum += v;
    }
    if (rsum != csum) throw DataError("oracle_count_tables: margin sums differ");
    if (rsum > 14)
        throw DataError("oracle_count_tables: enumeration budget is total <= 14");
    if (row_sums.empty() || col_sums.empty()) return rsum == 0 ? 1 : 0;

    OracleCounter oc;
    oc.rows = row_sums;
    std::vector<std::int64_t> cols(col_sums.begin(), col_sums.end());
    return oc.count(0, cols);
}

} // namespace polarscope::synth
