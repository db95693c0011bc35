#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarscope/graphs.hpp"

namespace polarscope::groups {

// Group-count profile log-likelihood of the degree-agnostic planted
// partition model, plus an MDL penalty:
//
//   fit     = m_in ln(m_in / T_in) + m_out ln(m_out / T_out)
//   penalty = n ln B + ln C(n-1, B-1) + r ln(m+1),  r = 2 for B >= 2 else 1
//
// with T_in = sum_g n_g (n_g - 1) ordered within-group pairs and
// T_out = n(n-1) - T_in. Zero-count terms contribute 0. The optional
// degree-corrected variant replaces the pair-count denominators with
// configuration-model expectations E_in = sum_g K_g^out K_g^in / m and
// E_out = m - E_in; it is off by default so golden files stay stable.

struct ObjectiveOptions {
    bool degree_corrected = false;

    const char* tag() const { return degree_corrected ? "pp-mdl-dc-1" : "pp-mdl-1"; }
};

double mdl_penalty(std::int64_t n, std::uint32_t num_groups, std::int64_t m);

/// Dense bidirectional view of an endorsement graph used by the search.
struct WorkGraph {
    std::uint32_t n = 0;
    std::int64_t total = 0;
    std::vector<std::uint32_t> adj_start; // CSR offsets, size n+1
    struct Arc {
        std::uint32_t to;
        std::int64_t weight; // w(u,v) + w(v,u)
    };
    std::vector<Arc> adj;
    std::vector<std::int64_t> out_mult, in_mult;

    static WorkGraph from(const graphs::EndorsementGraph& g);
};

/// Assignment bookkeeping with O(1) score deltas for single-node moves
/// and group merges.
class ObjectiveState {
public:
    ObjectiveState(const WorkGraph& g, std::vector<std::uint32_t> assignment,
                   std::uint32_t num_slots, ObjectiveOptions opts);

    double fit() const;

    std::int64_t group_size(std::uint32_t g) const { return size_[g]; }
    std::uint32_t group_of(std::uint32_t v) const { return assign_[v]; }
    const std::vector<std::uint32_t>& assignment() const { return assign_; }

    /// Fit delta of moving node v (currently in r) to group s, where
    /// w_to_r / w_to_s are the combined edge multiplicities between v and
    /// the two groups.
    double move_delta(std::uint32_t v, std::uint32_t r, std::uint32_t s,
                      std::int64_t w_to_r, std::int64_t w_to_s) const;
    void apply_move(std::uint32_t v, std::uint32_t r, std::uint32_t s,
                    std::int64_t w_to_r, std::int64_t w_to_s);

    /// Fit delta of merging groups g and h joined by total weight w_gh.
    double merge_delta(std::uint32_t g, std::uint32_t h, std::int64_t w_gh) const;
    void apply_merge(std::uint32_t g, std::uint32_t h, std::int64_t w_gh);

private:
    double fit_value(double m_in, double denom_in, double m_out, double denom_out) const;
    void denominators(double& in, double& out) const;
    void denominators_after_tin(std::int64_t t_in, std::int64_t s_kk, double& in,
                                double& out) const;

    const WorkGraph& g_;
    ObjectiveOptions opts_;
    std::vector<std::uint32_t> assign_;
    std::vector<std::int64_t> size_;
    std::vector<std::int64_t> k_out_, k_in_; // per group, degree-corrected mode
    std::int64_t m_in_ = 0;
    std::int64_t t_in_ = 0;
    std::int64_t s_kk_ = 0; // sum_g K_g^out * K_g^in
};

} // namespace polarscope::groups
