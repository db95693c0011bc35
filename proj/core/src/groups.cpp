#include "polarscope/groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "polarscope/errors.hpp"
#include "polarscope/prng.hpp"

namespace polarscope::groups {

namespace {

constexpr double kMoveEps = 1e-9;

/// Renumber an assignment canonically: groups by (size desc, smallest
/// member index asc). Users are sorted, so the smallest index is the
/// smallest id.
std::vector<std::uint32_t> canonical_form(const std::vector<std::uint32_t>& assign,
                                          std::uint32_t num_groups) {
    std::vector<std::int64_t> size(num_groups, 0);
    std::vector<std::uint32_t> first(num_groups, static_cast<std::uint32_t>(-1));
    for (std::uint32_t v = 0; v < assign.size(); ++v) {
        ++size[assign[v]];
        if (first[assign[v]] == static_cast<std::uint32_t>(-1)) first[assign[v]] = v;
    }
    std::vector<std::uint32_t> order(num_groups);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (size[a] != size[b]) return size[a] > size[b];
        return first[a] < first[b];
    });
    std::vector<std::uint32_t> rank(num_groups);
    for (std::uint32_t i = 0; i < num_groups; ++i) rank[order[i]] = i;
    std::vector<std::uint32_t> out(assign.size());
    for (std::uint32_t v = 0; v < assign.size(); ++v) out[v] = rank[assign[v]];
    return out;
}

struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite_into(std::uint32_t child, std::uint32_t root) { parent[child] = root; }
};

/// Greedy best-pair merges from singletons down to `target` groups.
/// Candidates are all edge-connected group pairs plus the extremal
/// edgeless pairs (two smallest and two largest groups). Ties break by a
/// seeded hash so restarts explore different merge orders on symmetric
/// graphs.
std::vector<std::uint32_t> agglomerate(const WorkGraph& g, std::uint32_t target,
                                       std::uint64_t tie_salt,
                                       const ObjectiveOptions& obj) {
    const std::uint32_t n = g.n;
    std::vector<std::uint32_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0u);
    ObjectiveState st(g, identity, n, obj);
    Dsu dsu(n);
    std::vector<char> alive(n, 1);
    std::uint32_t alive_count = n;

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> pw;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t a = g.adj_start[u]; a < g.adj_start[u + 1]; ++a)
            if (g.adj[a].to > u) pw[{u, g.adj[a].to}] = g.adj[a].weight;

    auto pair_rank = [&](std::uint32_t a, std::uint32_t b) {
        return rng::mix64(tie_salt ^ ((static_cast<std::uint64_t>(a) << 32) | b));
    };

    while (alive_count > target) {
        double best_delta = -1e301;
        std::uint64_t best_rank = 0;
        std::pair<std::uint32_t, std::uint32_t> best_pair{0, 0};
        std::int64_t best_w = 0;
        bool found = false;

        auto consider = [&](std::uint32_t a, std::uint32_t b, std::int64_t w) {
            const double delta = st.merge_delta(a, b, w);
            const std::uint64_t rank = pair_rank(a, b);
            if (!found || delta > best_delta ||
                (delta == best_delta && rank < best_rank)) {
                found = true;
                best_delta = delta;
                best_rank = rank;
                best_pair = {a, b};
                best_w = w;
            }
        };

        for (const auto& [pr, w] : pw) consider(pr.first, pr.second, w);

        // Edgeless merges only when no connected pair is left (profile
        // likelihoods otherwise reward merging unconnected groups just to
        // inflate the expected internal mass, which strands the search).
        if (pw.empty()) {
            std::uint32_t s1 = n, s2 = n, l1 = n, l2 = n;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (!alive[i]) continue;
                auto sz = st.group_size(i);
                if (s1 == n || sz < st.group_size(s1)) { s2 = s1; s1 = i; }
                else if (s2 == n || sz < st.group_size(s2)) s2 = i;
                if (l1 == n || sz >= st.group_size(l1)) { l2 = l1; l1 = i; }
                else if (l2 == n || sz >= st.group_size(l2)) l2 = i;
            }
            auto consider_edgeless = [&](std::uint32_t a, std::uint32_t b) {
                if (a == b || a == n || b == n) return;
                if (a > b) std::swap(a, b);
                consider(a, b, 0);
            };
            consider_edgeless(s1, s2);
            consider_edgeless(l1, l2);
        }

        if (!found) break; // fewer than two groups left
        const auto [gkeep, gdrop] = best_pair;
        st.apply_merge(gkeep, gdrop, best_w);
        dsu.unite_into(gdrop, gkeep);
        alive[gdrop] = 0;
        --alive_count;

        // Fold gdrop's pair entries into gkeep's.
        std::vector<std::pair<std::uint32_t, std::int64_t>> moved;
        for (auto it = pw.begin(); it != pw.end();) {
            const auto [a, b] = it->first;
            if (a == gdrop || b == gdrop) {
                const std::uint32_t other = a == gdrop ? b : a;
                if (other != gkeep) moved.emplace_back(other, it->second);
                it = pw.erase(it);
            } else {
                ++it;
            }
        }
        for (const auto& [other, w] : moved)
            pw[{std::min(gkeep, other), std::max(gkeep, other)}] += w;
    }

    std::vector<std::uint32_t> root_to_group(n, 0);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> out(n);
    std::vector<char> seen(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t r = dsu.find(v);
        if (!seen[r]) {
            seen[r] = 1;
            root_to_group[r] = next++;
        }
        out[v] = root_to_group[r];
    }
    return out;
}

/// First-improvement single-node hill climbing. Scans nodes in `order`;
/// the first target group with a positive delta wins.
void local_moves(const WorkGraph& g, std::uint32_t num_groups,
                 std::vector<std::uint32_t>& assign,
                 const std::vector<std::uint32_t>& order, int max_sweeps,
                 const ObjectiveOptions& obj) {
    if (num_groups < 2 || g.n == 0) return;
    ObjectiveState st(g, assign, num_groups, obj);
    std::vector<std::int64_t> w_to(num_groups, 0);
    std::vector<std::uint32_t> touched;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (const std::uint32_t v : order) {
            const std::uint32_t r = st.group_of(v);
            if (st.group_size(r) <= 1) continue; // groups must stay nonempty
            for (std::uint32_t a = g.adj_start[v]; a < g.adj_start[v + 1]; ++a) {
                const std::uint32_t grp = st.group_of(g.adj[a].to);
                if (w_to[grp] == 0) touched.push_back(grp);
                w_to[grp] += g.adj[a].weight;
            }
            for (std::uint32_t s = 0; s < num_groups; ++s) {
                if (s == r) continue;
                const double delta = st.move_delta(v, r, s, w_to[r], w_to[s]);
                if (delta > kMoveEps) {
                    st.apply_move(v, r, s, w_to[r], w_to[s]);
                    improved = true;
                    break;
                }
            }
            for (const std::uint32_t t : touched) w_to[t] = 0;
            touched.clear();
        }
        if (!improved) break;
    }
    assign = st.assignment();
}

Partition assignment_to_partition(const graphs::EndorsementGraph& g,
                                  std::vector<std::uint32_t> assign,
                                  std::uint32_t num_groups, double score) {
    Partition p;
    p.users = g.nodes;
    p.groups = std::move(assign);
    p.num_groups = num_groups;
    p.score = score;
    return p;
}

} // namespace

Partition infer_partition(const graphs::EndorsementGraph& g, std::uint32_t num_groups,
                          std::uint64_t seed, const InferOptions& opts) {
    if (num_groups < 1) throw DataError("number of groups must be >= 1");
    if (opts.restarts < 1) throw DataError("restarts must be >= 1");
    const std::uint32_t n = static_cast<std::uint32_t>(g.nodes.size());

    const WorkGraph wg = WorkGraph::from(g);

    if (num_groups == 1) {
        std::vector<std::uint32_t> assign(n, 0);
        ObjectiveState st(wg, assign, 1, opts.objective);
        const double score = st.fit() - mdl_penalty(n, 1, wg.total);
        return assignment_to_partition(g, std::move(assign), 1, score);
    }
    if (n == 0) throw DataError("cannot infer groups on an empty graph with B >= 2");
    if (num_groups > n)
        throw DataError("requested " + std::to_string(num_groups) + " groups for " +
                        std::to_string(n) + " nodes");

    double best_score = 0.0;
    std::vector<std::uint32_t> best_assign;
    bool have_best = false;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        const std::uint64_t sub =
            rng::derive(rng::derive(seed, "infer-restart"), static_cast<std::uint64_t>(restart));
        rng::Prng prng(sub);
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        prng.shuffle(order);

        std::vector<std::uint32_t> assign =
            agglomerate(wg, num_groups, rng::derive(sub, "merge-tie"), opts.objective);
        local_moves(wg, num_groups, assign, order, opts.max_sweeps, opts.objective);

        ObjectiveState st(wg, assign, num_groups, opts.objective);
        const double score = st.fit() - mdl_penalty(n, num_groups, wg.total);
        std::vector<std::uint32_t> canonical = canonical_form(assign, num_groups);
        if (!have_best || score > best_score ||
            (score == best_score && canonical < best_assign)) {
            have_best = true;
            best_score = score;
            best_assign = std::move(canonical);
        }
    }
    return assignment_to_partition(g, std::move(best_assign), num_groups, best_score);
}

ModelSelectionResult select_model(const graphs::EndorsementGraph& g, std::uint32_t b_max,
                                  std::uint64_t seed, const InferOptions& opts) {
    if (b_max < 1) throw DataError("B_max must be >= 1");
    const std::uint32_t n = static_cast<std::uint32_t>(g.nodes.size());
    const std::uint32_t feasible = std::min<std::uint32_t>(b_max, std::max<std::uint32_t>(n, 1));

    ModelSelectionResult res;
    for (std::uint32_t b = 1; b <= feasible; ++b)
        res.per_b.push_back(infer_partition(g, b, rng::derive(seed, b), opts));

    res.chosen_b = 1;
    for (std::uint32_t b = 2; b <= feasible; ++b)
        if (res.per_b[b - 1].score > res.per_b[res.chosen_b - 1].score) res.chosen_b = b;

    res.evidence_margin = 0.0;
    if (res.per_b.size() > 1) {
        double runner_up = -1e301;
        for (std::uint32_t b = 1; b <= feasible; ++b) {
            if (b == res.chosen_b) continue;
            runner_up = std::max(runner_up, res.per_b[b - 1].score);
        }
        res.evidence_margin = res.per_b[res.chosen_b - 1].score - runner_up;
    }
    return res;
}

ReferencePartitions fit_reference_partitions(const graphs::EndorsementGraph& parties_graph,
                                             std::uint64_t seed, const InferOptions& opts) {
    if (parties_graph.nodes.size() < 6)
        throw DataError("parties graph too small to fit reference partitions (needs >= "
                        "2*3 nodes, has " +
                        std::to_string(parties_graph.nodes.size()) + ")");
    ReferencePartitions out;
    out.institutional =
        infer_partition(parties_graph, 2, rng::derive(seed, "institutional"), opts);
    out.ideological =
        infer_partition(parties_graph, 3, rng::derive(seed, "ideological"), opts);
    return out;
}

LabelResult label_groups(const Partition& p, const std::vector<seeds::SeedAccount>& accounts,
                         const LabelOptions& opts) {
    LabelResult res;
    res.partition = p;

    constexpr std::size_t kBlocs = 3; // labelling blocs; Minor never labels
    const seeds::Bloc bloc_order[kBlocs] = {seeds::Bloc::ConservativeRight,
                                            seeds::Bloc::LiberalLeft,
                                            seeds::Bloc::ModerateRight};
    auto bloc_slot = [&](seeds::Bloc b) -> int {
        for (std::size_t i = 0; i < kBlocs; ++i)
            if (bloc_order[i] == b) return static_cast<int>(i);
        return -1;
    };

    std::vector<std::array<std::int64_t, kBlocs>> counts(
        p.num_groups, std::array<std::int64_t, kBlocs>{0, 0, 0});
    std::array<std::int64_t, kBlocs> totals{0, 0, 0};
    bool any_seed = false;

    for (const auto& acc : accounts) {
        if (opts.election_year && acc.election_year != *opts.election_year) continue;
        const auto grp = p.group_of(acc.author_id);
        if (!grp) continue;
        any_seed = true;
        seeds::Bloc bloc = acc.bloc;
        if (const auto it = opts.party_bloc.find(acc.party); it != opts.party_bloc.end())
            bloc = it->second;
        const int slot = bloc_slot(bloc);
        if (slot < 0) continue; // Minor: descriptive overlay only
        ++counts[*grp][static_cast<std::size_t>(slot)];
        ++totals[static_cast<std::size_t>(slot)];
    }
    if (!any_seed)
        throw DataError(
            "no seed accounts present in the partition; run the unlabeled operation or "
            "supply a seed file covering these users");

    std::vector<std::string> labels(p.num_groups);
    std::map<std::string, int> used;
    for (std::uint32_t grp = 0; grp < p.num_groups; ++grp) {
        int winner = -1;
        for (int s = 0; s < static_cast<int>(kBlocs); ++s) {
            if (counts[grp][s] == 0) continue;
            if (winner < 0) { winner = s; continue; }
            const auto a = counts[grp][s], b = counts[grp][winner];
            if (a > b ||
                (a == b && (totals[s] > totals[winner] ||
                            (totals[s] == totals[winner] &&
                             std::string(seeds::display_label(bloc_order[s])) <
                                 std::string(seeds::display_label(bloc_order[winner]))))))
                winner = s;
        }
        std::string label;
        if (winner < 0) {
            label = "Unlabeled-" + std::to_string(grp);
        } else {
            label = seeds::display_label(bloc_order[winner]);
            int tied = 0;
            for (int s = 0; s < static_cast<int>(kBlocs); ++s)
                if (counts[grp][s] == counts[grp][winner]) ++tied;
            if (tied > 1)
                res.warnings.push_back("group " + std::to_string(grp) +
                                       ": plurality tie broken deterministically -> " + label);
        }
        const int prior = used[label]++;
        if (prior > 0) {
            res.warnings.push_back("label '" + label + "' assigned to multiple groups");
            label += "-" + std::to_string(prior + 1);
        }
        labels[grp] = std::move(label);
    }
    res.partition.labels = std::move(labels);
    return res;
}

} // namespace polarscope::groups
