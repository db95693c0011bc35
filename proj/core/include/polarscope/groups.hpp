#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polarscope/graphs.hpp"
#include "polarscope/objective.hpp"
#include "polarscope/partition.hpp"
#include "polarscope/seeds.hpp"

namespace polarscope::groups {

struct InferOptions {
    int restarts = 2;
    ObjectiveOptions objective;
    int max_sweeps = 500; // hard cap on local-move sweeps
};

/// Best partition over `restarts` independent runs of agglomerative
/// initialization (greedy best-pair merges down to B groups) followed by
/// first-improvement single-node moves. Deterministic in
/// (graph, B, seed, options); the returned score is fit minus the MDL
/// penalty. B = 1 needs no search. Throws DataError when B exceeds the
/// node count or the graph is empty with B >= 2.
Partition infer_partition(const graphs::EndorsementGraph& g, std::uint32_t num_groups,
                          std::uint64_t seed, const InferOptions& opts = {});

struct ModelSelectionResult {
    std::vector<Partition> per_b; // index i holds the fit for B = i+1
    std::uint32_t chosen_b = 1;
    double evidence_margin = 0.0; // best minus runner-up, 0 if single candidate

    const Partition& chosen() const { return per_b.at(chosen_b - 1); }
};

/// Fit every B in 1..b_max (B values above the node count are skipped)
/// and pick the penalized-score maximum; ties go to the smaller B.
/// chosen_b == 1 means no statistical evidence for group structure.
ModelSelectionResult select_model(const graphs::EndorsementGraph& g, std::uint32_t b_max,
                                  std::uint64_t seed, const InferOptions& opts = {});

struct ReferencePartitions {
    Partition institutional; // B = 2
    Partition ideological;   // B = 3
};

/// Two fixed-B inferences on the parties-topic graph aggregated over one
/// study period. Throws DataError when the graph has fewer than 6 nodes.
ReferencePartitions fit_reference_partitions(const graphs::EndorsementGraph& parties_graph,
                                             std::uint64_t seed,
                                             const InferOptions& opts = {});

struct LabelOptions {
    /// Optional party -> bloc overrides applied before counting.
    std::map<std::string, seeds::Bloc> party_bloc;
    /// Restrict to seeds from one election year.
    std::optional<int> election_year;
};

struct LabelResult {
    Partition partition;
    std::vector<std::string> warnings; // ties, label collisions
};

/// Label each group by the plurality bloc among its seed members.
/// Minor-bloc seeds never determine a label; ties break by total bloc
/// seed count, then lexicographic bloc name (with a warning). Groups
/// without seeds become "Unlabeled-<k>"; duplicate labels get a numeric
/// suffix. Throws DataError when no seed account is present at all.
LabelResult label_groups(const Partition& p, const std::vector<seeds::SeedAccount>& accounts,
                         const LabelOptions& opts = {});

} // namespace polarscope::groups
