#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polarscope/graphs.hpp"
#include "polarscope/groups.hpp"
#include "polarscope/logomega.hpp"
#include "polarscope/partition.hpp"

namespace polarscope::polarization {

struct AeiResult {
    std::optional<double> value; // absent iff m_in + m_out == 0
    std::int64_t m_in = 0;
    std::int64_t m_out = 0;
};

/// Adaptive external-internal index for the group pair (X, Y) on the
/// induced sub-multigraph of partition members of X and Y:
///   d_in  = m_in  / (n_X (n_X - 1) + n_Y (n_Y - 1))
///   d_out = m_out / (2 n_X n_Y)
///   aei   = (d_in - d_out) / (d_in + d_out)
/// +1 when all endorsements stay inside a group, -1 when all cross.
/// Throws DataError when X == Y or either group is empty in `partition`.
AeiResult aei(const graphs::EndorsementGraph& g, const Partition& partition,
              std::uint32_t group_x, std::uint32_t group_y);

struct RmiResult {
    std::optional<double> value; // absent iff fewer than 2 common users
    bool approx = false;         // a log_omega fallback was used
    std::int64_t common_users = 0;
};

/// Reduced mutual information between two partitions, restricted to
/// their common users (optionally intersected with `universe`, a sorted
/// id list). M(A;B) = n I(A;B) - ln Omega(a,b), symmetrically normalized
/// by 2 M(A;B) / (M(A;A) + M(B;B)); negatives and degenerate
/// denominators clamp to 0.
RmiResult rmi(const Partition& a, const Partition& b,
              const std::vector<std::string>* universe = nullptr,
              const LogOmegaOptions& opts = {});

/// Per-window partisan sorting: RMI between the window's selected
/// partition and the fixed reference; undefined where chosen_b == 1.
std::vector<RmiResult> partisan_sorting_series(
    std::span<const groups::ModelSelectionResult> weekly, const Partition& reference,
    const LogOmegaOptions& opts = {});

struct AlignmentEntry {
    std::string topic;
    std::string week; // window-start date (local), used as the axis label
    const Partition* partition = nullptr;
    std::uint32_t chosen_b = 1;
};

struct AlignmentCell {
    std::uint32_t a = 0; // indices into the entry span
    std::uint32_t b = 0;
    std::optional<double> rmi;
    std::int64_t overlap = 0;
    bool approx = false;
};

/// All unordered entry pairs (diagonal included). A cell is undefined
/// when either side has chosen_b == 1 or the user overlap is below
/// min_overlap.
std::vector<AlignmentCell> alignment_matrix(std::span<const AlignmentEntry> entries,
                                            std::int64_t min_overlap,
                                            const LogOmegaOptions& opts = {});

} // namespace polarscope::polarization
