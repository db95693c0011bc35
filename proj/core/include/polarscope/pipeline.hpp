#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarscope/runconfig.hpp"

namespace polarscope::pipeline {

struct Finding {
    std::string location;
    std::string message;
};

struct ValidateReport {
    std::vector<Finding> findings;
    std::int64_t events_parsed = 0;
    std::int64_t events_rejected = 0;

    bool clean() const { return findings.empty(); }
};

/// Check paths, schemas, and topic configs; parse every input fully.
ValidateReport cmd_validate(const RunConfig& cfg);

/// Fit and label the per-period reference partitions (institutional B=2,
/// ideological B=3) from the parties topic; write partition CSVs plus a
/// metadata sidecar into the output directory.
void cmd_infer_groups(const RunConfig& cfg, int jobs);

/// Per-topic trend tables: windowed pair AEI, partisan sorting RMIs, and
/// participation. Requires partition files from cmd_infer_groups.
void cmd_trends(const RunConfig& cfg, int jobs);

/// Cross-topic alignment matrix over weekly inferred partitions.
void cmd_align(const RunConfig& cfg, int jobs);

/// Task-2 analytics: outlet tables, viral rankings, per-article
/// sentiment breakdowns; journalism-targeting subset written separately.
void cmd_newsflow(const RunConfig& cfg, int jobs);

/// Generate fixture files from a synthetic spec (kinds: planted_stream,
/// dataset).
void cmd_synth(const std::string& spec_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_override);

} // namespace polarscope::pipeline
