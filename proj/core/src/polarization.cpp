#include "polarscope/polarization.hpp"

#include <algorithm>
#include <cmath>

#include "polarscope/errors.hpp"

namespace polarscope::polarization {

AeiResult aei(const graphs::EndorsementGraph& g, const Partition& partition,
              std::uint32_t group_x, std::uint32_t group_y) {
    if (group_x == group_y) throw DataError("aei: groups must differ");
    if (group_x >= partition.num_groups || group_y >= partition.num_groups)
        throw DataError("aei: group index out of range");

    // Group membership of each graph node: 0 = X, 1 = Y, -1 = neither.
    std::vector<signed char> side(g.nodes.size(), -1);
    std::int64_t n_x = 0, n_y = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto grp = partition.group_of(g.nodes[i]);
        if (!grp) continue;
        if (*grp == group_x) { side[i] = 0; ++n_x; }
        else if (*grp == group_y) { side[i] = 1; ++n_y; }
    }
    if (n_x == 0 || n_y == 0)
        throw DataError("aei: a group has no members in this graph");

    AeiResult res;
    for (const auto& e : g.edges) {
        const auto a = side[e.src], b = side[e.dst];
        if (a < 0 || b < 0) continue;
        if (a == b) res.m_in += e.mult;
        else res.m_out += e.mult;
    }
    if (res.m_in + res.m_out == 0) return res;

    const double pairs_in =
        static_cast<double>(n_x * (n_x - 1) + n_y * (n_y - 1));
    const double pairs_out = static_cast<double>(2 * n_x * n_y);
    // Singleton-only groups have no internal pairs; treat d_in as zero.
    const double d_in = pairs_in > 0 ? static_cast<double>(res.m_in) / pairs_in : 0.0;
    const double d_out = static_cast<double>(res.m_out) / pairs_out;
    res.value = (d_in - d_out) / (d_in + d_out);
    return res;
}

namespace {

struct Contingency {
    std::vector<std::int64_t> table; // r * num_b + s
    std::vector<std::int64_t> row_sums, col_sums;
    std::int64_t n = 0;
    std::uint32_t num_a = 0, num_b = 0;
};

Contingency build_contingency(const Partition& a, const Partition& b,
                              const std::vector<std::string>* universe) {
    Contingency c;
    c.num_a = a.num_groups;
    c.num_b = b.num_groups;
    c.table.assign(static_cast<std::size_t>(c.num_a) * c.num_b, 0);
    c.row_sums.assign(c.num_a, 0);
    c.col_sums.assign(c.num_b, 0);

    // a.users and b.users are sorted; walk the intersection.
    std::size_t i = 0, j = 0;
    while (i < a.users.size() && j < b.users.size()) {
        const int cmp = a.users[i].compare(b.users[j]);
        if (cmp < 0) { ++i; continue; }
        if (cmp > 0) { ++j; continue; }
        if (!universe ||
            std::binary_search(universe->begin(), universe->end(), a.users[i])) {
            const auto r = a.groups[i];
            const auto s = b.groups[j];
            ++c.table[static_cast<std::size_t>(r) * c.num_b + s];
            ++c.row_sums[r];
            ++c.col_sums[s];
            ++c.n;
        }
        ++i;
        ++j;
    }
    return c;
}

/// n * I(A;B) from the contingency table, in nats.
double n_times_mi(const Contingency& c) {
    double acc = 0.0;
    const double n = static_cast<double>(c.n);
    for (std::uint32_t r = 0; r < c.num_a; ++r)
        for (std::uint32_t s = 0; s < c.num_b; ++s) {
            const auto nrs = c.table[static_cast<std::size_t>(r) * c.num_b + s];
            if (nrs == 0) continue;
            acc += static_cast<double>(nrs) *
                   std::log(n * static_cast<double>(nrs) /
                            (static_cast<double>(c.row_sums[r]) *
                             static_cast<double>(c.col_sums[s])));
        }
    return acc;
}

/// Contingency of a partition with itself (diagonal table). Sharing the
/// n_times_mi code path keeps rmi(A, A) at exactly 1.0.
Contingency diag_contingency(const std::vector<std::int64_t>& margin, std::int64_t n) {
    Contingency c;
    c.num_a = c.num_b = static_cast<std::uint32_t>(margin.size());
    c.table.assign(static_cast<std::size_t>(c.num_a) * c.num_b, 0);
    for (std::uint32_t r = 0; r < c.num_a; ++r)
        c.table[static_cast<std::size_t>(r) * c.num_b + r] = margin[r];
    c.row_sums = margin;
    c.col_sums = margin;
    c.n = n;
    return c;
}

} // namespace

RmiResult rmi(const Partition& a, const Partition& b,
              const std::vector<std::string>* universe, const LogOmegaOptions& opts) {
    const Contingency c = build_contingency(a, b, universe);
    RmiResult res;
    res.common_users = c.n;
    if (c.n < 2) return res; // undefined, distinct from 0

    const auto om_ab = log_omega(c.row_sums, c.col_sums, opts);
    const auto om_aa = log_omega(c.row_sums, c.row_sums, opts);
    const auto om_bb = log_omega(c.col_sums, c.col_sums, opts);
    res.approx = !om_ab.exact || !om_aa.exact || !om_bb.exact;

    const double m_ab = n_times_mi(c) - om_ab.value;
    const double m_aa = n_times_mi(diag_contingency(c.row_sums, c.n)) - om_aa.value;
    const double m_bb = n_times_mi(diag_contingency(c.col_sums, c.n)) - om_bb.value;

    const double denom = m_aa + m_bb;
    if (denom <= 0.0) {
        res.value = 0.0;
        return res;
    }
    res.value = std::clamp(2.0 * m_ab / denom, 0.0, 1.0);
    return res;
}

std::vector<RmiResult> partisan_sorting_series(
    std::span<const groups::ModelSelectionResult> weekly, const Partition& reference,
    const LogOmegaOptions& opts) {
    std::vector<RmiResult> out;
    out.reserve(weekly.size());
    for (const auto& sel : weekly) {
        if (sel.chosen_b == 1) {
            out.emplace_back(); // undefined: no evidence for structure
            continue;
        }
        out.push_back(rmi(sel.chosen(), reference, nullptr, opts));
    }
    return out;
}

std::vector<AlignmentCell> alignment_matrix(std::span<const AlignmentEntry> entries,
                                            std::int64_t min_overlap,
                                            const LogOmegaOptions& opts) {
    std::vector<AlignmentCell> out;
    const auto n = static_cast<std::uint32_t>(entries.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            AlignmentCell cell;
            cell.a = i;
            cell.b = j;
            const auto& ea = entries[i];
            const auto& eb = entries[j];

            // Overlap is reported even for undefined cells.
            std::size_t x = 0, y = 0;
            const auto& ua = ea.partition->users;
            const auto& ub = eb.partition->users;
            while (x < ua.size() && y < ub.size()) {
                const int cmp = ua[x].compare(ub[y]);
                if (cmp < 0) ++x;
                else if (cmp > 0) ++y;
                else { ++cell.overlap; ++x; ++y; }
            }

            if (ea.chosen_b >= 2 && eb.chosen_b >= 2 && cell.overlap >= min_overlap) {
                const auto r = rmi(*ea.partition, *eb.partition, nullptr, opts);
                cell.rmi = r.value;
                cell.approx = r.approx;
            }
            out.push_back(std::move(cell));
        }
    }
    return out;
}

} // namespace polarscope::polarization
