#include "polarscope/objective.hpp"

#include <algorithm>
#include <cmath>

namespace polarscope::groups {

namespace {

inline double xlog_ratio(double cnt, double denom) {
    if (cnt <= 0) return 0.0;
    if (denom <= 0) return -1e300; // inconsistent model, never optimal
    return cnt * std::log(cnt / denom);
}

} // namespace

double mdl_penalty(std::int64_t n, std::uint32_t num_groups, std::int64_t m) {
    if (n <= 0) return std::log(static_cast<double>(m + 1));
    const double b = static_cast<double>(num_groups);
    double penalty = static_cast<double>(n) * std::log(b);
    // ln C(n-1, B-1)
    penalty += std::lgamma(static_cast<double>(n)) - std::lgamma(b) -
               std::lgamma(static_cast<double>(n - num_groups + 1));
    const double rates = num_groups >= 2 ? 2.0 : 1.0;
    penalty += rates * std::log(static_cast<double>(m + 1));
    return penalty;
}

WorkGraph WorkGraph::from(const graphs::EndorsementGraph& g) {
    WorkGraph w;
    w.n = static_cast<std::uint32_t>(g.nodes.size());
    w.out_mult.assign(w.n, 0);
    w.in_mult.assign(w.n, 0);

    // One arc per unordered neighbor pair and direction of traversal,
    // carrying w(u,v) + w(v,u).
    std::vector<std::pair<std::uint64_t, std::int64_t>> half;
    half.reserve(g.edges.size() * 2);
    for (const auto& e : g.edges) {
        w.total += e.mult;
        w.out_mult[e.src] += e.mult;
        w.in_mult[e.dst] += e.mult;
        half.emplace_back((static_cast<std::uint64_t>(e.src) << 32) | e.dst, e.mult);
        half.emplace_back((static_cast<std::uint64_t>(e.dst) << 32) | e.src, e.mult);
    }
    std::sort(half.begin(), half.end());

    w.adj_start.assign(w.n + 1, 0);
    std::vector<Arc> arcs;
    arcs.reserve(half.size());
    for (std::size_t i = 0; i < half.size();) {
        std::size_t j = i;
        std::int64_t sum = 0;
        while (j < half.size() && half[j].first == half[i].first) sum += half[j++].second;
        const auto u = static_cast<std::uint32_t>(half[i].first >> 32);
        const auto v = static_cast<std::uint32_t>(half[i].first & 0xFFFFFFFFu);
        arcs.push_back({v, sum});
        ++w.adj_start[u + 1];
        i = j;
    }
    for (std::uint32_t u = 0; u < w.n; ++u) w.adj_start[u + 1] += w.adj_start[u];
    w.adj = std::move(arcs);
    return w;
}

ObjectiveState::ObjectiveState(const WorkGraph& g, std::vector<std::uint32_t> assignment,
                               std::uint32_t num_slots, ObjectiveOptions opts)
    : g_(g), opts_(opts), assign_(std::move(assignment)) {
    size_.assign(num_slots, 0);
    k_out_.assign(num_slots, 0);
    k_in_.assign(num_slots, 0);
    for (std::uint32_t v = 0; v < g_.n; ++v) {
        const auto grp = assign_[v];
        ++size_[grp];
        k_out_[grp] += g_.out_mult[v];
        k_in_[grp] += g_.in_mult[v];
    }
    for (std::uint32_t grp = 0; grp < num_slots; ++grp) {
        t_in_ += size_[grp] * (size_[grp] - 1);
        s_kk_ += k_out_[grp] * k_in_[grp];
    }
    for (std::uint32_t u = 0; u < g_.n; ++u)
        for (std::uint32_t a = g_.adj_start[u]; a < g_.adj_start[u + 1]; ++a) {
            const auto& arc = g_.adj[a];
            // Arcs are symmetric; count each unordered pair once.
            if (arc.to > u && assign_[arc.to] == assign_[u]) m_in_ += arc.weight;
        }
}

void ObjectiveState::denominators(double& in, double& out) const {
    denominators_after_tin(t_in_, s_kk_, in, out);
}

void ObjectiveState::denominators_after_tin(std::int64_t t_in, std::int64_t s_kk,
                                            double& in, double& out) const {
    if (opts_.degree_corrected) {
        const double m = static_cast<double>(g_.total);
        in = m > 0 ? static_cast<double>(s_kk) / m : 0.0;
        out = static_cast<double>(g_.total) - in;
    } else {
        const double n = static_cast<double>(g_.n);
        in = static_cast<double>(t_in);
        out = n * (n - 1) - in;
    }
}

double ObjectiveState::fit_value(double m_in, double denom_in, double m_out,
                                 double denom_out) const {
    return xlog_ratio(m_in, denom_in) + xlog_ratio(m_out, denom_out);
}

double ObjectiveState::fit() const {
    double din, dout;
    denominators(din, dout);
    return fit_value(static_cast<double>(m_in_), din,
                     static_cast<double>(g_.total - m_in_), dout);
}

double ObjectiveState::move_delta(std::uint32_t v, std::uint32_t r, std::uint32_t s,
                                  std::int64_t w_to_r, std::int64_t w_to_s) const {
    if (r == s) return 0.0;
    const std::int64_t new_m_in = m_in_ - w_to_r + w_to_s;
    const std::int64_t new_t_in = t_in_ - 2 * (size_[r] - 1) + 2 * size_[s];
    std::int64_t new_s_kk = s_kk_;
    if (opts_.degree_corrected) {
        const std::int64_t ko = g_.out_mult[v], ki = g_.in_mult[v];
        new_s_kk -= k_out_[r] * k_in_[r] + k_out_[s] * k_in_[s];
        new_s_kk += (k_out_[r] - ko) * (k_in_[r] - ki) + (k_out_[s] + ko) * (k_in_[s] + ki);
    }
    double din0, dout0, din1, dout1;
    denominators(din0, dout0);
    denominators_after_tin(new_t_in, new_s_kk, din1, dout1);
    const double m = static_cast<double>(g_.total);
    return fit_value(static_cast<double>(new_m_in), din1,
                     m - static_cast<double>(new_m_in), dout1) -
           fit_value(static_cast<double>(m_in_), din0,
                     m - static_cast<double>(m_in_), dout0);
}

void ObjectiveState::apply_move(std::uint32_t v, std::uint32_t r, std::uint32_t s,
                                std::int64_t w_to_r, std::int64_t w_to_s) {
    m_in_ += w_to_s - w_to_r;
    t_in_ += -2 * (size_[r] - 1) + 2 * size_[s];
    if (opts_.degree_corrected) {
        const std::int64_t ko = g_.out_mult[v], ki = g_.in_mult[v];
        s_kk_ -= k_out_[r] * k_in_[r] + k_out_[s] * k_in_[s];
        k_out_[r] -= ko;
        k_in_[r] -= ki;
        k_out_[s] += ko;
        k_in_[s] += ki;
        s_kk_ += k_out_[r] * k_in_[r] + k_out_[s] * k_in_[s];
    }
    --size_[r];
    ++size_[s];
    assign_[v] = s;
}

double ObjectiveState::merge_delta(std::uint32_t g, std::uint32_t h,
                                   std::int64_t w_gh) const {
    const std::int64_t new_m_in = m_in_ + w_gh;
    const std::int64_t new_t_in = t_in_ + 2 * size_[g] * size_[h];
    std::int64_t new_s_kk = s_kk_;
    if (opts_.degree_corrected) {
        new_s_kk -= k_out_[g] * k_in_[g] + k_out_[h] * k_in_[h];
        new_s_kk += (k_out_[g] + k_out_[h]) * (k_in_[g] + k_in_[h]);
    }
    double din0, dout0, din1, dout1;
    denominators(din0, dout0);
    denominators_after_tin(new_t_in, new_s_kk, din1, dout1);
    const double m = static_cast<double>(g_.total);
    return fit_value(static_cast<double>(new_m_in), din1,
                     m - static_cast<double>(new_m_in), dout1) -
           fit_value(static_cast<double>(m_in_), din0,
                     m - static_cast<double>(m_in_), dout0);
}

void ObjectiveState::apply_merge(std::uint32_t g, std::uint32_t h, std::int64_t w_gh) {
    m_in_ += w_gh;
    t_in_ += 2 * size_[g] * size_[h];
    if (opts_.degree_corrected) {
        s_kk_ -= k_out_[g] * k_in_[g] + k_out_[h] * k_in_[h];
        k_out_[g] += k_out_[h];
        k_in_[g] += k_in_[h];
        k_out_[h] = 0;
        k_in_[h] = 0;
        s_kk_ += k_out_[g] * k_in_[g];
    }
    size_[g] += size_[h];
    size_[h] = 0;
    // assign_ is not rewritten here; agglomerative callers track group
    // membership themselves and rebuild a compact state afterwards.
}

} // namespace polarscope::groups
