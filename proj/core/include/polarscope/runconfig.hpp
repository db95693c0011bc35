#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarscope/graphs.hpp"
#include "polarscope/ingest.hpp"
#include "polarscope/logomega.hpp"

namespace polarscope::pipeline {

/// One resolved run configuration. Paths are made absolute against the
/// config file's directory at load time so commands can run from
/// anywhere.
struct RunConfig {
    std::vector<std::string> inputs;
    ingest::EventFormat format = ingest::EventFormat::jsonl;
    std::string topics_path;
    std::string parties_topic = "parties";
    std::string seeds_path;
    std::vector<ingest::StudyPeriod> periods;
    ingest::WindowSpec windows = ingest::WindowSpec::weekly();
    std::string timezone = "Europe/Helsinki";
    graphs::AccountFilterMode account_filter = graphs::AccountFilterMode::all;
    bool retweets_with_news = false;
    std::string journalism_keywords_path; // optional
    std::uint32_t b_max = 3;
    std::uint64_t seed = 1;
    int restarts = 2;
    std::int64_t min_overlap = 20;
    std::string output_dir;
    std::int64_t top_viral = 50;
    std::int64_t top_outlets = 5;
    bool match_retweeted_text = false;
    bool binarize_parties_graph = false;
    bool degree_corrected = false;
    std::vector<std::pair<std::string, int>> seed_election_year; // period -> year
    polarization::LogOmegaOptions log_omega;

    std::vector<std::string> unknown_keys; // collected for validate

    static RunConfig load(const std::string& path);

    std::optional<int> election_year_for(const std::string& period) const;
};

/// Parse "weekly" | "bimonthly" | "days:N".
std::optional<ingest::WindowSpec> parse_window_spec(const std::string& s);

} // namespace polarscope::pipeline
