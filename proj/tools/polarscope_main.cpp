// polarscope CLI: structural-polarization measurement over interaction
// event streams. Subcommands: validate, infer-groups, trends, align,
// newsflow, synth.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarscope/errors.hpp"
#include "polarscope/pipeline.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int jobs = 0; // 0 -> default
    std::optional<std::string> subset;
    bool retweets_with_news = false;
    std::optional<std::string> windows;
    bool error_json = false;
};

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

polarscope::pipeline::RunConfig load_config(const GlobalArgs& g) {
    using polarscope::ConfigError;
    if (g.config_path.empty()) throw ConfigError("--config PATH is required");
    auto cfg = polarscope::pipeline::RunConfig::load(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    if (g.subset) {
        const auto mode = polarscope::graphs::account_filter_from_string(*g.subset);
        if (!mode)
            throw ConfigError("--subset must be all|candidates-only|exclude-candidates");
        cfg.account_filter = *mode;
    }
    if (g.retweets_with_news) cfg.retweets_with_news = true;
    if (g.windows) {
        const auto w = polarscope::pipeline::parse_window_spec(*g.windows);
        if (!w) throw ConfigError("--windows must be weekly|bimonthly|days:N");
        cfg.windows = *w;
    }
    return cfg;
}

void report_error(const GlobalArgs& g, const char* kind, const std::string& what) {
    if (g.error_json) {
        nlohmann::ordered_json j;
        j["error"]["kind"] = kind;
        j["error"]["message"] = what;
        std::cerr << j.dump() << "\n";
    } else {
        std::cerr << "polarscope: " << kind << ": " << what << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace polarscope;

    CLI::App app{"structural polarization measurement toolkit"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "run configuration file (JSON)");
    std::uint64_t seed_val = 0;
    auto* seed_opt = app.add_option("--seed", seed_val, "override the config seed");
    g.jobs = default_jobs();
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    std::string subset_val;
    auto* subset_opt = app.add_option(
        "--subset", subset_val, "account subset: all|candidates-only|exclude-candidates");
    app.add_flag("--retweets-with-news", g.retweets_with_news,
                 "restrict endorsement graphs to retweets of news-linking tweets");
    std::string windows_val;
    auto* windows_opt =
        app.add_option("--windows", windows_val, "window scheme: weekly|bimonthly|days:N");
    app.add_flag("--error-json", g.error_json, "machine-readable errors on stderr");

    auto* validate = app.add_subcommand("validate", "check config, paths, and input schemas");
    auto* infer = app.add_subcommand("infer-groups",
                                     "fit per-period reference partitions from the parties topic");
    auto* trends = app.add_subcommand("trends", "windowed AEI / sorting / participation tables");
    auto* align = app.add_subcommand("align", "cross-topic weekly alignment matrix");
    auto* newsflow = app.add_subcommand("newsflow", "user->news analytics (outlets, virality)");

    auto* synth = app.add_subcommand("synth", "generate synthetic fixtures from a spec");
    std::string synth_spec, synth_out;
    synth->add_option("spec", synth_spec, "synthetic spec JSON")->required();
    synth->add_option("--out", synth_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) g.seed = seed_val;
    if (*subset_opt) g.subset = subset_val;
    if (*windows_opt) g.windows = windows_val;

    try {
        if (validate->parsed()) {
            const auto cfg = load_config(g);
            const auto rep = pipeline::cmd_validate(cfg);
            for (const auto& f : rep.findings)
                std::cout << "FINDING " << f.location << ": " << f.message << "\n";
            std::cout << "validate: " << rep.findings.size() << " finding(s), "
                      << rep.events_parsed << " events parsed, " << rep.events_rejected
                      << " rejected\n";
            return rep.clean() ? 0 : 1;
        }
        if (infer->parsed()) {
            pipeline::cmd_infer_groups(load_config(g), g.jobs);
            return 0;
        }
        if (trends->parsed()) {
            pipeline::cmd_trends(load_config(g), g.jobs);
            return 0;
        }
        if (align->parsed()) {
            pipeline::cmd_align(load_config(g), g.jobs);
            return 0;
        }
        if (newsflow->parsed()) {
            pipeline::cmd_newsflow(load_config(g), g.jobs);
            return 0;
        }
        if (synth->parsed()) {
            pipeline::cmd_synth(synth_spec, synth_out, g.seed);
            return 0;
        }
    } catch (const ConfigError& e) {
        report_error(g, "configuration", e.what());
        return 1;
    } catch (const DataError& e) {
        report_error(g, "runtime", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error(g, "internal", e.what());
        return 2;
    }
    return 0;
}
