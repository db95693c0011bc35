#include "polarscope/runconfig.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "polarscope/errors.hpp"

namespace polarscope::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<ingest::WindowSpec> parse_window_spec(const std::string& s) {
    if (s == "weekly") return ingest::WindowSpec::weekly();
    if (s == "bimonthly") return ingest::WindowSpec::bimonthly();
    if (s.rfind("days:", 0) == 0) {
        try {
            const int days = std::stoi(s.substr(5));
            if (days >= 1) return ingest::WindowSpec::custom(days);
        } catch (...) {
        }
    }
    return std::nullopt;
}

std::optional<int> RunConfig::election_year_for(const std::string& period) const {
    for (const auto& [name, year] : seed_election_year)
        if (name == period) return year;
    return std::nullopt;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");

    const fs::path base = fs::absolute(fs::path(path)).parent_path();
    auto resolve = [&](const std::string& p) {
        return fs::path(p).is_absolute() ? p : (base / p).lexically_normal().string();
    };

    static const std::set<std::string> known = {
        "inputs", "format", "topics", "parties_topic", "seeds", "periods", "windows",
        "timezone", "account_filter", "retweets_with_news", "journalism_keywords",
        "b_max", "seed", "restarts", "min_overlap", "output_dir", "top_viral",
        "top_outlets", "match_retweeted_text", "binarize_parties_graph",
        "degree_corrected", "seed_election_year", "log_omega"};

    RunConfig cfg;
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) cfg.unknown_keys.push_back(key);

    auto require = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw ConfigError(path + ": missing required key '" + std::string(key) + "'");
        return j.at(key);
    };

    for (const auto& v : require("inputs")) {
        if (!v.is_string()) throw ConfigError(path + ": inputs must be strings");
        cfg.inputs.push_back(resolve(v.get<std::string>()));
    }
    if (cfg.inputs.empty()) throw ConfigError(path + ": inputs must be non-empty");

    if (j.contains("format")) {
        const auto f = j.at("format").get<std::string>();
        if (f == "jsonl") cfg.format = ingest::EventFormat::jsonl;
        else if (f == "csv") cfg.format = ingest::EventFormat::csv;
        else throw ConfigError(path + ": format must be 'jsonl' or 'csv'");
    }

    cfg.topics_path = resolve(require("topics").get<std::string>());
    if (j.contains("parties_topic")) cfg.parties_topic = j.at("parties_topic").get<std::string>();
    if (j.contains("seeds")) cfg.seeds_path = resolve(j.at("seeds").get<std::string>());

    for (const auto& p : require("periods")) {
        ingest::StudyPeriod period;
        period.name = p.at("name").get<std::string>();
        const auto start = civil::parse_date(p.at("start").get<std::string>());
        const auto end = civil::parse_date(p.at("end").get<std::string>());
        if (!start || !end)
            throw ConfigError(path + ": period '" + period.name + "': bad date");
        period.start = *start;
        period.end = *end;
        if (period.end < period.start)
            throw ConfigError(path + ": period '" + period.name + "': end before start");
        cfg.periods.push_back(std::move(period));
    }
    if (cfg.periods.empty()) throw ConfigError(path + ": at least one period required");
    for (std::size_t i = 0; i < cfg.periods.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.periods.size(); ++k) {
            const auto& a = cfg.periods[i];
            const auto& b = cfg.periods[k];
            if (!(a.end < b.start || b.end < a.start))
                throw ConfigError(path + ": periods '" + a.name + "' and '" + b.name +
                                  "' overlap");
            if (a.name == b.name)
                throw ConfigError(path + ": duplicate period name '" + a.name + "'");
        }

    if (j.contains("windows")) {
        const auto w = parse_window_spec(j.at("windows").get<std::string>());
        if (!w) throw ConfigError(path + ": windows must be weekly|bimonthly|days:N");
        cfg.windows = *w;
    }
    if (j.contains("timezone")) cfg.timezone = j.at("timezone").get<std::string>();
    if (!civil::TimeZone::parse(cfg.timezone))
        throw ConfigError(path + ": unknown timezone '" + cfg.timezone + "'; " +
                          civil::TimeZone::supported_ids_hint());

    if (j.contains("account_filter")) {
        const auto m = graphs::account_filter_from_string(j.at("account_filter").get<std::string>());
        if (!m)
            throw ConfigError(path +
                              ": account_filter must be all|candidates-only|exclude-candidates");
        cfg.account_filter = *m;
    }
    if (j.contains("retweets_with_news"))
        cfg.retweets_with_news = j.at("retweets_with_news").get<bool>();
    if (j.contains("journalism_keywords"))
        cfg.journalism_keywords_path = resolve(j.at("journalism_keywords").get<std::string>());
    if (j.contains("b_max")) cfg.b_max = j.at("b_max").get<std::uint32_t>();
    if (cfg.b_max < 1) throw ConfigError(path + ": b_max must be >= 1");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (cfg.restarts < 1) throw ConfigError(path + ": restarts must be >= 1");
    if (j.contains("min_overlap")) cfg.min_overlap = j.at("min_overlap").get<std::int64_t>();
    if (cfg.min_overlap < 2) throw ConfigError(path + ": min_overlap must be >= 2");
    cfg.output_dir = resolve(require("output_dir").get<std::string>());
    if (j.contains("top_viral")) cfg.top_viral = j.at("top_viral").get<std::int64_t>();
    if (j.contains("top_outlets")) cfg.top_outlets = j.at("top_outlets").get<std::int64_t>();
    if (cfg.top_viral < 1 || cfg.top_outlets < 1)
        throw ConfigError(path + ": top_viral/top_outlets must be >= 1");
    if (j.contains("match_retweeted_text"))
        cfg.match_retweeted_text = j.at("match_retweeted_text").get<bool>();
    if (j.contains("binarize_parties_graph"))
        cfg.binarize_parties_graph = j.at("binarize_parties_graph").get<bool>();
    if (j.contains("degree_corrected"))
        cfg.degree_corrected = j.at("degree_corrected").get<bool>();
    if (j.contains("seed_election_year")) {
        for (const auto& [period, year] : j.at("seed_election_year").items())
            cfg.seed_election_year.emplace_back(period, year.get<int>());
    }
    if (j.contains("log_omega")) {
        const auto& lo = j.at("log_omega");
        if (lo.contains("two_row_exact_max"))
            cfg.log_omega.two_row_exact_max = lo.at("two_row_exact_max").get<std::int64_t>();
        if (lo.contains("three_row_exact_max"))
            cfg.log_omega.three_row_exact_max = lo.at("three_row_exact_max").get<std::int64_t>();
        if (lo.contains("general_exact_max"))
            cfg.log_omega.general_exact_max = lo.at("general_exact_max").get<std::int64_t>();
    }
    return cfg;
}

} // namespace polarscope::pipeline
