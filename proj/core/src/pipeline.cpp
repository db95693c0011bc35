#include "polarscope/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "polarscope/csvio.hpp"
#include "polarscope/errors.hpp"
#include "polarscope/newsflow.hpp"
#include "polarscope/parallel.hpp"
#include "polarscope/polarization.hpp"
#include "polarscope/prng.hpp"
#include "polarscope/synth.hpp"
#include "polarscope/text.hpp"

namespace polarscope::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------
// Shared loading

struct Dataset {
    std::vector<InteractionEvent> events;
    ingest::ParseReport report;
    std::vector<ingest::TopicConfig> topics;
    std::vector<seeds::SeedAccount> seed_accounts;
    std::vector<std::string> journalism_keywords;
    civil::TimeZone tz = civil::TimeZone::utc();
    std::vector<std::vector<std::uint32_t>> events_by_topic; // aligned with topics
};

Dataset load_dataset(const RunConfig& cfg, bool classify) {
    Dataset d;
    d.tz = *civil::TimeZone::parse(cfg.timezone);
    d.topics = ingest::load_topic_configs(cfg.topics_path);
    if (!cfg.seeds_path.empty()) d.seed_accounts = seeds::load_seed_accounts(cfg.seeds_path);
    if (!cfg.journalism_keywords_path.empty())
        d.journalism_keywords = ingest::load_keyword_list(cfg.journalism_keywords_path);

    std::unordered_set<std::string> seen_ids; // ids are unique per dataset, not per file
    for (const auto& path : cfg.inputs) {
        auto part = ingest::load_events(path, cfg.format, d.report, &seen_ids);
        if (d.events.empty()) d.events = std::move(part);
        else d.events.insert(d.events.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
    }

    if (classify) {
        d.events_by_topic.resize(d.topics.size());
        for (std::uint32_t i = 0; i < d.events.size(); ++i) {
            const auto& e = d.events[i];
            std::string folded = text::case_fold(e.text);
            if (cfg.match_retweeted_text && e.retweeted_text) {
                folded.push_back('\n');
                folded += text::case_fold(*e.retweeted_text);
            }
            for (std::size_t t = 0; t < d.topics.size(); ++t)
                if (ingest::matches_any_keyword_folded(folded, d.topics[t].keywords))
                    d.events_by_topic[t].push_back(i);
        }
    }
    return d;
}

std::optional<std::size_t> topic_index(const Dataset& d, const std::string& topic_id) {
    for (std::size_t t = 0; t < d.topics.size(); ++t)
        if (d.topics[t].topic_id == topic_id) return t;
    return std::nullopt;
}

/// Analysis topics: everything except the parties topic, sorted by id.
std::vector<std::size_t> analysis_topics(const Dataset& d, const RunConfig& cfg) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < d.topics.size(); ++t)
        if (d.topics[t].topic_id != cfg.parties_topic) out.push_back(t);
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        return d.topics[a].topic_id < d.topics[b].topic_id;
    });
    return out;
}

struct WindowedIndices {
    std::vector<ingest::TimeWindow> windows;
    std::vector<std::vector<std::uint32_t>> per_window;
    std::int64_t dropped = 0;
};

WindowedIndices window_indices(const std::vector<InteractionEvent>& events,
                               std::span<const std::uint32_t> indices,
                               const ingest::WindowSpec& spec,
                               const ingest::StudyPeriod& period, const civil::TimeZone& tz) {
    WindowedIndices out;
    out.windows = ingest::make_windows(spec, period, tz);
    out.per_window.resize(out.windows.size());
    if (out.windows.empty()) return out;
    const std::int64_t period_begin = tz.local_midnight(period.start);
    const std::int64_t period_end = tz.local_midnight(civil::civil_from_days(
        civil::days_from_civil(period.end.year, period.end.month, period.end.day) + 1));
    std::vector<std::int64_t> starts;
    for (const auto& w : out.windows) starts.push_back(w.start);
    for (const std::uint32_t i : indices) {
        const std::int64_t t = events[i].created_at;
        if (t < period_begin || t >= period_end || t < starts.front()) {
            ++out.dropped;
            continue;
        }
        const auto it = std::upper_bound(starts.begin(), starts.end(), t);
        out.per_window[static_cast<std::size_t>(it - starts.begin()) - 1].push_back(i);
    }
    return out;
}

std::string window_start_date(const ingest::TimeWindow& w, const civil::TimeZone& tz) {
    const auto c = tz.to_civil(w.start);
    return civil::format_date({c.year, c.month, c.day});
}

std::string sanitize_label(std::string label) {
    for (char& c : label)
        if (c == ' ' || c == ',') c = '_';
    return label;
}

// ---------------------------------------------------------------------
// Output plumbing

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string();
}

void write_meta(const std::string& path, ordered_json meta) {
    auto out = open_out(path);
    out << meta.dump(2) << "\n";
}

ordered_json config_echo(const RunConfig& cfg) {
    ordered_json c;
    c["timezone"] = cfg.timezone;
    c["windows"] = cfg.windows.to_string();
    c["account_filter"] = graphs::to_string(cfg.account_filter);
    c["retweets_with_news"] = cfg.retweets_with_news;
    c["b_max"] = cfg.b_max;
    c["seed"] = cfg.seed;
    c["restarts"] = cfg.restarts;
    c["min_overlap"] = cfg.min_overlap;
    c["binarize_parties_graph"] = cfg.binarize_parties_graph;
    c["degree_corrected"] = cfg.degree_corrected;
    c["match_retweeted_text"] = cfg.match_retweeted_text;
    ordered_json periods = ordered_json::array();
    for (const auto& p : cfg.periods) {
        ordered_json pj;
        pj["name"] = p.name;
        pj["start"] = civil::format_date(p.start);
        pj["end"] = civil::format_date(p.end);
        periods.push_back(pj);
    }
    c["periods"] = periods;
    return c;
}

// ---------------------------------------------------------------------
// Reference partitions

std::string partition_path(const RunConfig& cfg, const std::string& period,
                           const char* which) {
    return cfg.output_dir + "/partition_" + period + "_" + which + ".csv";
}

Partition load_reference(const RunConfig& cfg, const std::string& period,
                         const char* which) {
    const std::string path = partition_path(cfg, period, which);
    if (!fs::exists(path))
        throw DataError("missing partition file " + path +
                        "; run 'polarscope infer-groups' first");
    return read_partition_csv(path);
}

// ---------------------------------------------------------------------
// Weekly model selection, with a content-keyed cache

struct WindowSelection {
    std::uint32_t chosen_b = 1;
    double evidence_margin = 0.0;
    std::vector<double> scores; // score of B = index + 1
    Partition chosen;
};

std::uint64_t graph_content_key(const graphs::EndorsementGraph& g, const RunConfig& cfg) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix_bytes = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001B3ULL;
        }
    };
    auto mix_str = [&](const std::string& s) { mix_bytes(s.data(), s.size()); };
    for (const auto& nid : g.nodes) {
        mix_str(nid);
        mix_bytes("\x1f", 1);
    }
    for (const auto& e : g.edges) {
        mix_bytes(&e.src, sizeof(e.src));
        mix_bytes(&e.dst, sizeof(e.dst));
        mix_bytes(&e.mult, sizeof(e.mult));
    }
    const std::uint64_t params[] = {cfg.seed, cfg.b_max,
                                    static_cast<std::uint64_t>(cfg.restarts),
                                    static_cast<std::uint64_t>(cfg.degree_corrected)};
    mix_bytes(params, sizeof(params));
    return h;
}

std::string cache_path(const RunConfig& cfg, std::uint64_t key) {
    std::ostringstream ss;
    ss << cfg.output_dir << "/cache/sel_" << std::hex << key << ".json";
    return ss.str();
}

std::optional<WindowSelection> cache_get(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        WindowSelection sel;
        sel.chosen_b = j.at("chosen_b").get<std::uint32_t>();
        sel.evidence_margin = j.at("evidence_margin").get<double>();
        sel.scores = j.at("scores").get<std::vector<double>>();
        sel.chosen.num_groups = j.at("b").get<std::uint32_t>();
        sel.chosen.score = j.at("score").get<double>();
        sel.chosen.users = j.at("users").get<std::vector<std::string>>();
        sel.chosen.groups = j.at("groups").get<std::vector<std::uint32_t>>();
        if (sel.chosen.groups.size() != sel.chosen.users.size()) return std::nullopt;
        return sel;
    } catch (...) {
        return std::nullopt; // treat unreadable entries as misses
    }
}

void cache_put(const std::string& path, const WindowSelection& sel) {
    ordered_json j;
    j["chosen_b"] = sel.chosen_b;
    j["evidence_margin"] = sel.evidence_margin;
    j["scores"] = sel.scores;
    j["b"] = sel.chosen.num_groups;
    j["score"] = sel.chosen.score;
    j["users"] = sel.chosen.users;
    j["groups"] = sel.chosen.groups;
    auto out = open_out(path);
    out << j.dump() << "\n";
}

WindowSelection select_window(const graphs::EndorsementGraph& g, const RunConfig& cfg,
                              std::uint64_t window_seed, bool use_cache) {
    const std::uint64_t key =
        rng::mix64(graph_content_key(g, cfg) ^ rng::mix64(window_seed));
    const std::string path = cache_path(cfg, key);
    if (use_cache) {
        if (auto hit = cache_get(path)) return *hit;
    }
    groups::InferOptions opts;
    opts.restarts = cfg.restarts;
    opts.objective.degree_corrected = cfg.degree_corrected;
    const auto res = groups::select_model(g, cfg.b_max, window_seed, opts);

    WindowSelection sel;
    sel.chosen_b = res.chosen_b;
    sel.evidence_margin = res.evidence_margin;
    for (const auto& p : res.per_b) sel.scores.push_back(p.score);
    sel.chosen = res.chosen();
    if (use_cache) cache_put(path, sel);
    return sel;
}

} // namespace

// ---------------------------------------------------------------------
// validate

ValidateReport cmd_validate(const RunConfig& cfg) {
    ValidateReport rep;
    auto finding = [&](const std::string& where, const std::string& what) {
        rep.findings.push_back({where, what});
    };

    for (const auto& key : cfg.unknown_keys) finding("config", "unknown key '" + key + "'");

    for (const auto& p : cfg.inputs)
        if (!fs::exists(p)) finding(p, "input file does not exist");
    if (!fs::exists(cfg.topics_path)) finding(cfg.topics_path, "topic config does not exist");
    if (!cfg.seeds_path.empty() && !fs::exists(cfg.seeds_path))
        finding(cfg.seeds_path, "seed file does not exist");
    if (!cfg.journalism_keywords_path.empty() && !fs::exists(cfg.journalism_keywords_path))
        finding(cfg.journalism_keywords_path, "journalism keyword file does not exist");
    if (!rep.findings.empty()) return rep;

    std::vector<ingest::TopicConfig> topics;
    try {
        topics = ingest::load_topic_configs(cfg.topics_path);
        bool has_parties = false;
        for (const auto& t : topics) has_parties |= t.topic_id == cfg.parties_topic;
        if (!has_parties)
            finding(cfg.topics_path, "parties topic '" + cfg.parties_topic +
                                         "' not present (infer-groups will fail)");
    } catch (const std::exception& e) {
        finding(cfg.topics_path, e.what());
    }
    if (!cfg.seeds_path.empty()) {
        try {
            const auto accounts = seeds::load_seed_accounts(cfg.seeds_path);
            if (accounts.empty()) finding(cfg.seeds_path, "seed file has no rows");
        } catch (const std::exception& e) {
            finding(cfg.seeds_path, e.what());
        }
    }
    if (!cfg.journalism_keywords_path.empty()) {
        try {
            (void)ingest::load_keyword_list(cfg.journalism_keywords_path);
        } catch (const std::exception& e) {
            finding(cfg.journalism_keywords_path, e.what());
        }
    }

    std::unordered_set<std::string> seen_ids;
    for (const auto& path : cfg.inputs) {
        ingest::ParseReport pr;
        try {
            (void)ingest::load_events(path, cfg.format, pr, &seen_ids);
        } catch (const std::exception& e) {
            finding(path, e.what());
            continue;
        }
        rep.events_parsed += pr.parsed;
        rep.events_rejected += pr.rejected;
        for (const auto& issue : pr.issues)
            finding(path + ":" + std::to_string(issue.line), issue.message);
        if (pr.rejected > static_cast<std::int64_t>(pr.issues.size()))
            finding(path, std::to_string(pr.rejected) + " records rejected in total");
    }
    return rep;
}

// ---------------------------------------------------------------------
// infer-groups

void cmd_infer_groups(const RunConfig& cfg, int jobs) {
    const Dataset d = load_dataset(cfg, true);
    const auto parties = topic_index(d, cfg.parties_topic);
    if (!parties)
        throw ConfigError("parties topic '" + cfg.parties_topic +
                          "' is not defined in the topic config");
    if (cfg.seeds_path.empty())
        throw ConfigError("infer-groups needs a seed-account file ('seeds' in the config)");
    ensure_dir(cfg.output_dir);

    groups::InferOptions opts;
    opts.restarts = cfg.restarts;
    opts.objective.degree_corrected = cfg.degree_corrected;

    struct PeriodOut {
        std::string name;
        double inst_score = 0, ideo_score = 0;
        std::int64_t nodes = 0, events = 0;
        std::vector<std::string> warnings;
    };
    std::vector<PeriodOut> results(cfg.periods.size());

    parallel_for(jobs, cfg.periods.size(), [&](std::size_t pi) {
        const auto& period = cfg.periods[pi];
        // Aggregate the parties stream over the whole period.
        const auto windows = window_indices(d.events, d.events_by_topic[*parties],
                                            ingest::WindowSpec::custom(100000), period, d.tz);
        std::vector<std::uint32_t> in_period;
        for (const auto& w : windows.per_window)
            in_period.insert(in_period.end(), w.begin(), w.end());

        ingest::TimeWindow span{0, windows.windows.front().start,
                                windows.windows.back().end};
        auto g = graphs::build_endorsement_graph(d.events, in_period, span);
        if (cfg.binarize_parties_graph) g = graphs::binarize(g);

        const std::uint64_t seed = rng::derive(cfg.seed, "refs-" + period.name);
        auto refs = groups::fit_reference_partitions(g, seed, opts);

        groups::LabelOptions lopts;
        lopts.election_year = cfg.election_year_for(period.name);
        auto inst = groups::label_groups(refs.institutional, d.seed_accounts, lopts);
        auto ideo = groups::label_groups(refs.ideological, d.seed_accounts, lopts);
        inst.partition.canonicalize();
        ideo.partition.canonicalize();

        write_partition_csv(partition_path(cfg, period.name, "institutional"),
                            inst.partition, seed, opts.objective.tag());
        write_partition_csv(partition_path(cfg, period.name, "ideological"), ideo.partition,
                            seed, opts.objective.tag());

        auto& out = results[pi];
        out.name = period.name;
        out.inst_score = inst.partition.score;
        out.ideo_score = ideo.partition.score;
        out.nodes = static_cast<std::int64_t>(g.nodes.size());
        out.events = g.event_count;
        out.warnings = inst.warnings;
        out.warnings.insert(out.warnings.end(), ideo.warnings.begin(), ideo.warnings.end());
    });

    ordered_json meta;
    meta["tool"] = "polarscope";
    meta["command"] = "infer-groups";
    meta["objective"] = opts.objective.tag();
    meta["config"] = config_echo(cfg);
    ordered_json per_period = ordered_json::array();
    for (const auto& r : results) {
        ordered_json pj;
        pj["period"] = r.name;
        pj["nodes"] = r.nodes;
        pj["events"] = r.events;
        pj["score_institutional"] = csv::format_double(r.inst_score);
        pj["score_ideological"] = csv::format_double(r.ideo_score);
        pj["warnings"] = r.warnings;
        per_period.push_back(pj);
    }
    meta["periods"] = per_period;
    meta["events_parsed"] = d.report.parsed;
    meta["events_rejected"] = d.report.rejected;
    write_meta(cfg.output_dir + "/infer_groups_meta.json", std::move(meta));
}

// ---------------------------------------------------------------------
// trends

namespace {

struct TrendWindowRow {
    ingest::TimeWindow window;
    graphs::Participation participation;
    std::vector<polarization::AeiResult> ideo_pairs;
    std::vector<polarization::AeiResult> inst_pairs;
    std::optional<double> rmi_institutional;
    std::optional<double> rmi_ideological;
    bool approx = false;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> label_sorted_pairs(
    const Partition& p) {
    std::vector<std::uint32_t> order(p.num_groups);
    for (std::uint32_t i = 0; i < p.num_groups; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return p.label_of(a) < p.label_of(b);
    });
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            pairs.emplace_back(order[i], order[j]);
    return pairs;
}

polarization::AeiResult guarded_aei(const graphs::EndorsementGraph& g, const Partition& p,
                                    std::uint32_t gx, std::uint32_t gy) {
    // Pair AEI is undefined when a group has no active members.
    std::int64_t nx = 0, ny = 0;
    for (const auto& u : g.nodes) {
        const auto grp = p.group_of(u);
        if (!grp) continue;
        if (*grp == gx) ++nx;
        if (*grp == gy) ++ny;
    }
    if (nx == 0 || ny == 0) return {};
    return polarization::aei(g, p, gx, gy);
}

} // namespace

void cmd_trends(const RunConfig& cfg, int jobs) {
    const Dataset d = load_dataset(cfg, true);
    ensure_dir(cfg.output_dir);
    ensure_dir(cfg.output_dir + "/cache");
    const auto seed_ids = seeds::seed_author_ids(d.seed_accounts);
    const auto topics = analysis_topics(d, cfg);

    struct PeriodRefs {
        Partition institutional, ideological;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ideo_pairs, inst_pairs;
        std::vector<std::string> active_labels; // ideological labels, sorted
    };
    std::vector<PeriodRefs> refs(cfg.periods.size());
    for (std::size_t pi = 0; pi < cfg.periods.size(); ++pi) {
        refs[pi].institutional = load_reference(cfg, cfg.periods[pi].name, "institutional");
        refs[pi].ideological = load_reference(cfg, cfg.periods[pi].name, "ideological");
        refs[pi].ideo_pairs = label_sorted_pairs(refs[pi].ideological);
        refs[pi].inst_pairs = label_sorted_pairs(refs[pi].institutional);
        for (std::uint32_t g = 0; g < refs[pi].ideological.num_groups; ++g)
            refs[pi].active_labels.push_back(refs[pi].ideological.label_of(g));
        std::sort(refs[pi].active_labels.begin(), refs[pi].active_labels.end());
    }
    // Column layout needs one label set; labels must agree across periods.
    std::vector<std::string> active_labels = refs.empty() ? std::vector<std::string>{}
                                                          : refs[0].active_labels;
    for (const auto& r : refs)
        for (const auto& l : r.active_labels)
            if (std::find(active_labels.begin(), active_labels.end(), l) ==
                active_labels.end())
                active_labels.push_back(l);
    std::sort(active_labels.begin(), active_labels.end());

    std::atomic<bool> any_approx{false};
    std::int64_t dropped = 0, news_filtered_out = 0;

    for (const std::size_t t : topics) {
        const auto& topic_id = d.topics[t].topic_id;

        // Collect rows per (period, window); windows computed per period.
        struct PeriodRows {
            std::vector<TrendWindowRow> rows;
        };
        std::vector<PeriodRows> period_rows(cfg.periods.size());

        for (std::size_t pi = 0; pi < cfg.periods.size(); ++pi) {
            const auto& period = cfg.periods[pi];
            std::vector<std::uint32_t> idx = d.events_by_topic[t];
            if (cfg.account_filter != graphs::AccountFilterMode::all)
                idx = graphs::filter_accounts(d.events, idx, cfg.account_filter, seed_ids);
            if (cfg.retweets_with_news) {
                auto res = graphs::restrict_to_news_retweets(d.events, idx);
                news_filtered_out +=
                    static_cast<std::int64_t>(idx.size() - res.kept.size());
                idx = std::move(res.kept);
            }
            const auto wi = window_indices(d.events, idx, cfg.windows, period, d.tz);
            dropped += wi.dropped;

            auto& rows = period_rows[pi].rows;
            rows.resize(wi.windows.size());
            parallel_for(jobs, wi.windows.size(), [&](std::size_t w) {
                auto& row = rows[w];
                row.window = wi.windows[w];
                const auto g = graphs::build_endorsement_graph(
                    d.events, wi.per_window[w], wi.windows[w]);
                row.participation = graphs::participation(g, refs[pi].ideological);
                for (const auto& [gx, gy] : refs[pi].ideo_pairs)
                    row.ideo_pairs.push_back(guarded_aei(g, refs[pi].ideological, gx, gy));
                for (const auto& [gx, gy] : refs[pi].inst_pairs)
                    row.inst_pairs.push_back(guarded_aei(g, refs[pi].institutional, gx, gy));

                if (!g.empty()) {
                    const std::uint64_t wseed = rng::derive(
                        cfg.seed, topic_id + "|" + period.name + "|w" +
                                      std::to_string(row.window.index));
                    const auto sel = select_window(g, cfg, wseed, true);
                    if (sel.chosen_b >= 2) {
                        const auto ri = polarization::rmi(sel.chosen, refs[pi].institutional,
                                                          nullptr, cfg.log_omega);
                        const auto rd = polarization::rmi(sel.chosen, refs[pi].ideological,
                                                          nullptr, cfg.log_omega);
                        row.rmi_institutional = ri.value;
                        row.rmi_ideological = rd.value;
                        row.approx = ri.approx || rd.approx;
                    }
                }
                if (row.approx) any_approx.store(true);
            });
        }

        // Serialize.
        auto out = open_out(cfg.output_dir + "/trends_" + topic_id + ".csv");
        csv::Writer w(out);
        std::vector<std::string> header = {"window_start", "period",  "topic",
                                           "partition",    "pair",    "aei",
                                           "m_in",         "m_out"};
        for (const auto& l : active_labels) header.push_back("active_" + sanitize_label(l));
        header.push_back("nonpartisan_share");
        header.push_back("rmi_institutional");
        header.push_back("rmi_ideological");
        w.row(header);

        for (std::size_t pi = 0; pi < cfg.periods.size(); ++pi) {
            const auto& period = cfg.periods[pi];
            for (const auto& row : period_rows[pi].rows) {
                // Per-window shared fields.
                std::vector<std::string> shared;
                for (const auto& l : active_labels) {
                    std::int64_t count = 0;
                    for (std::uint32_t g = 0; g < refs[pi].ideological.num_groups; ++g)
                        if (refs[pi].ideological.label_of(g) == l)
                            count = row.participation.active_per_group[g];
                    shared.push_back(csv::format_int(count));
                }
                shared.push_back(csv::format_double(row.participation.nonpartisan_share));
                shared.push_back(fmt_opt(row.rmi_institutional));
                shared.push_back(fmt_opt(row.rmi_ideological));

                auto emit = [&](const char* partition_name,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                const Partition& ref,
                                const std::vector<polarization::AeiResult>& values) {
                    for (std::size_t k = 0; k < pairs.size(); ++k) {
                        std::vector<std::string> fields = {
                            window_start_date(row.window, d.tz),
                            period.name,
                            topic_id,
                            partition_name,
                            ref.label_of(pairs[k].first) + "|" + ref.label_of(pairs[k].second),
                            fmt_opt(values[k].value),
                            csv::format_int(values[k].m_in),
                            csv::format_int(values[k].m_out)};
                        fields.insert(fields.end(), shared.begin(), shared.end());
                        w.row(fields);
                    }
                };
                emit("ideological", refs[pi].ideo_pairs, refs[pi].ideological, row.ideo_pairs);
                emit("institutional", refs[pi].inst_pairs, refs[pi].institutional,
                     row.inst_pairs);
            }
        }
    }

    ordered_json meta;
    meta["tool"] = "polarscope";
    meta["command"] = "trends";
    meta["config"] = config_echo(cfg);
    meta["events_parsed"] = d.report.parsed;
    meta["events_rejected"] = d.report.rejected;
    meta["events_outside_periods"] = dropped;
    meta["events_removed_by_news_restriction"] = news_filtered_out;
    meta["log_omega_approx_used"] = any_approx.load();
    write_meta(cfg.output_dir + "/trends_meta.json", std::move(meta));
}

// ---------------------------------------------------------------------
// align

void cmd_align(const RunConfig& cfg, int jobs) {
    const Dataset d = load_dataset(cfg, true);
    ensure_dir(cfg.output_dir);
    ensure_dir(cfg.output_dir + "/cache");
    const auto seed_ids = seeds::seed_author_ids(d.seed_accounts);
    const auto topics = analysis_topics(d, cfg);

    struct Entry {
        std::string topic;
        std::string week;
        WindowSelection sel;
    };
    std::vector<Entry> entries;

    for (const std::size_t t : topics) {
        const auto& topic_id = d.topics[t].topic_id;
        for (std::size_t pi = 0; pi < cfg.periods.size(); ++pi) {
            const auto& period = cfg.periods[pi];
            std::vector<std::uint32_t> idx = d.events_by_topic[t];
            if (cfg.account_filter != graphs::AccountFilterMode::all)
                idx = graphs::filter_accounts(d.events, idx, cfg.account_filter, seed_ids);
            if (cfg.retweets_with_news)
                idx = graphs::restrict_to_news_retweets(d.events, idx).kept;
            const auto wi = window_indices(d.events, idx, cfg.windows, period, d.tz);

            const std::size_t base = entries.size();
            entries.resize(base + wi.windows.size());
            parallel_for(jobs, wi.windows.size(), [&](std::size_t w) {
                auto& entry = entries[base + w];
                entry.topic = topic_id;
                entry.week = window_start_date(wi.windows[w], d.tz);
                const auto g = graphs::build_endorsement_graph(
                    d.events, wi.per_window[w], wi.windows[w]);
                if (g.empty()) {
                    entry.sel.chosen_b = 1;
                    return;
                }
                const std::uint64_t wseed = rng::derive(
                    cfg.seed, topic_id + "|" + period.name + "|w" +
                                  std::to_string(wi.windows[w].index));
                entry.sel = select_window(g, cfg, wseed, true);
            });
        }
    }

    std::vector<polarization::AlignmentEntry> aentries;
    aentries.reserve(entries.size());
    for (const auto& e : entries)
        aentries.push_back({e.topic, e.week, &e.sel.chosen, e.sel.chosen_b});

    // Cells computed in parallel per first index, serialized in order.
    const auto n = aentries.size();
    std::vector<std::vector<polarization::AlignmentCell>> cell_rows(n);
    parallel_for(jobs, n, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
            polarization::AlignmentCell cell;
            cell.a = static_cast<std::uint32_t>(i);
            cell.b = static_cast<std::uint32_t>(j);
            const auto& ea = aentries[i];
            const auto& eb = aentries[j];
            std::size_t x = 0, y = 0;
            const auto& ua = ea.partition->users;
            const auto& ub = eb.partition->users;
            while (x < ua.size() && y < ub.size()) {
                const int cmp = ua[x].compare(ub[y]);
                if (cmp < 0) ++x;
                else if (cmp > 0) ++y;
                else { ++cell.overlap; ++x; ++y; }
            }
            if (ea.chosen_b >= 2 && eb.chosen_b >= 2 && cell.overlap >= cfg.min_overlap) {
                const auto r =
                    polarization::rmi(*ea.partition, *eb.partition, nullptr, cfg.log_omega);
                cell.rmi = r.value;
                cell.approx = r.approx;
            }
            cell_rows[i].push_back(std::move(cell));
        }
    });

    bool any_approx = false;
    auto out = open_out(cfg.output_dir + "/alignment.csv");
    csv::Writer w(out);
    w.row({"topic_a", "week_a", "topic_b", "week_b", "rmi", "defined", "overlap_n"});
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& cell : cell_rows[i]) {
            any_approx |= cell.approx;
            w.row({aentries[cell.a].topic, aentries[cell.a].week, aentries[cell.b].topic,
                   aentries[cell.b].week, fmt_opt(cell.rmi),
                   cell.rmi ? "true" : "false", csv::format_int(cell.overlap)});
        }
    }

    ordered_json meta;
    meta["tool"] = "polarscope";
    meta["command"] = "align";
    meta["config"] = config_echo(cfg);
    meta["entries"] = static_cast<std::int64_t>(n);
    meta["log_omega_approx_used"] = any_approx;
    write_meta(cfg.output_dir + "/alignment_meta.json", std::move(meta));
}

// ---------------------------------------------------------------------
// newsflow

namespace {

void write_newsflow_for(const RunConfig& cfg, const std::string& suffix,
                        const std::string& period_name, const std::string& topic_id,
                        const std::vector<InteractionEvent>& events,
                        const Partition& reference, csv::Writer& outlets_csv,
                        std::int64_t* rejected_urls, std::int64_t* missing_sentiment) {
    const auto g = graphs::build_user_news_graph(
        events, [](std::int64_t l, std::int64_t r, std::int64_t p) {
            return newsflow::virality(l, r, p);
        });
    *rejected_urls += g.rejected_urls;
    *missing_sentiment += g.missing_sentiment;

    // Outlet table rows (shared CSV across periods/topics).
    for (const auto& row :
         newsflow::outlet_table(g, reference, static_cast<std::size_t>(cfg.top_outlets)))
        outlets_csv.row({period_name, topic_id, row.group, row.outlet,
                         csv::format_int(row.unique_articles), csv::format_int(row.rank)});

    // Viral ranking + per-article breakdowns.
    const auto top =
        newsflow::top_viral_news(g, static_cast<std::size_t>(cfg.top_viral));

    std::vector<std::string> group_labels;
    for (std::uint32_t grp = 0; grp < reference.num_groups; ++grp)
        group_labels.push_back(reference.label_of(grp));
    std::sort(group_labels.begin(), group_labels.end());
    group_labels.erase(std::unique(group_labels.begin(), group_labels.end()),
                       group_labels.end());
    group_labels.push_back(newsflow::kNonpartisanLabel);

    auto viral_out = open_out(cfg.output_dir + "/viral_" + period_name + "_" + topic_id +
                              suffix + ".csv");
    csv::Writer vw(viral_out);
    std::vector<std::string> header = {"rank", "article_key", "outlet", "centrality"};
    for (const auto& l : group_labels) {
        const auto s = sanitize_label(l);
        header.push_back(s + "_tweets");
        header.push_back(s + "_pos");
        header.push_back(s + "_neg");
        header.push_back(s + "_neutral");
        header.push_back(s + "_virality");
        header.push_back(s + "_virality_pos");
        header.push_back(s + "_virality_neg");
        header.push_back(s + "_virality_neutral");
    }
    vw.row(header);

    ordered_json breakdowns = ordered_json::object();
    std::int64_t rank = 1;
    for (const auto& [key, centrality] : top) {
        const auto breakdown = newsflow::group_sentiment_breakdown(g, reference, key);
        const auto idx = g.article_index(key);
        const std::string outlet = g.articles[*idx].outlet;

        std::vector<std::string> fields = {csv::format_int(rank), key, outlet,
                                           csv::format_int(centrality)};
        ordered_json jgroups = ordered_json::object();
        for (const auto& l : group_labels) {
            static const newsflow::GroupStats zero;
            const auto* s = breakdown.find(l);
            if (!s) s = &zero;
            fields.push_back(csv::format_int(s->tweet_count));
            fields.push_back(csv::format_int(s->pos_count));
            fields.push_back(csv::format_int(s->neg_count));
            fields.push_back(csv::format_int(s->neutral_count));
            fields.push_back(csv::format_int(s->virality_total));
            fields.push_back(csv::format_int(s->virality_pos));
            fields.push_back(csv::format_int(s->virality_neg));
            fields.push_back(csv::format_int(s->virality_neutral));

            ordered_json js;
            js["tweets"] = s->tweet_count;
            js["pos"] = s->pos_count;
            js["neg"] = s->neg_count;
            js["neutral"] = s->neutral_count;
            js["virality"] = s->virality_total;
            js["virality_pos"] = s->virality_pos;
            js["virality_neg"] = s->virality_neg;
            js["virality_neutral"] = s->virality_neutral;
            jgroups[l] = js;
        }
        vw.row(fields);

        ordered_json jart;
        jart["rank"] = rank;
        jart["outlet"] = outlet;
        jart["centrality"] = centrality;
        jart["groups"] = jgroups;
        breakdowns[key] = jart;
        ++rank;
    }

    auto bout = open_out(cfg.output_dir + "/breakdown_" + period_name + "_" + topic_id +
                         suffix + ".json");
    bout << breakdowns.dump(2) << "\n";
}

} // namespace

void cmd_newsflow(const RunConfig& cfg, int jobs) {
    (void)jobs; // outputs are small; a single pass keeps ordering trivial
    const Dataset d = load_dataset(cfg, true);
    ensure_dir(cfg.output_dir);
    const auto seed_ids = seeds::seed_author_ids(d.seed_accounts);
    const auto topics = analysis_topics(d, cfg);

    auto outlets_subject = open_out(cfg.output_dir + "/outlets.csv");
    auto outlets_journalism = open_out(cfg.output_dir + "/outlets_journalism.csv");
    csv::Writer ow_subject(outlets_subject), ow_journalism(outlets_journalism);
    const std::vector<std::string> outlet_header = {"period", "topic",           "group",
                                                    "outlet", "unique_articles", "rank"};
    ow_subject.row(outlet_header);
    ow_journalism.row(outlet_header);

    std::int64_t rejected_urls = 0, missing_sentiment = 0, journalism_events = 0;

    for (std::size_t pi = 0; pi < cfg.periods.size(); ++pi) {
        const auto& period = cfg.periods[pi];
        const Partition reference = load_reference(cfg, period.name, "ideological");
        for (const std::size_t t : topics) {
            const auto& topic_id = d.topics[t].topic_id;
            std::vector<std::uint32_t> idx = d.events_by_topic[t];
            if (cfg.account_filter != graphs::AccountFilterMode::all)
                idx = graphs::filter_accounts(d.events, idx, cfg.account_filter, seed_ids);
            // Period restriction via one period-spanning window.
            const auto wi = window_indices(d.events, idx, ingest::WindowSpec::custom(100000),
                                           period, d.tz);
            std::vector<InteractionEvent> subset;
            for (const auto& wvec : wi.per_window)
                for (const auto i : wvec)
                    if (d.events[i].kind == EventKind::original)
                        subset.push_back(d.events[i]);

            auto [subject, journalism] =
                ingest::split_journalism(subset, d.journalism_keywords);
            journalism_events += static_cast<std::int64_t>(journalism.size());

            write_newsflow_for(cfg, "", period.name, topic_id, subject, reference,
                               ow_subject, &rejected_urls, &missing_sentiment);
            write_newsflow_for(cfg, "_journalism", period.name, topic_id, journalism,
                               reference, ow_journalism, &rejected_urls, &missing_sentiment);
        }
    }

    ordered_json meta;
    meta["tool"] = "polarscope";
    meta["command"] = "newsflow";
    meta["config"] = config_echo(cfg);
    meta["events_parsed"] = d.report.parsed;
    meta["events_rejected"] = d.report.rejected;
    meta["rejected_urls"] = rejected_urls;
    meta["missing_sentiment_mapped_neutral"] = missing_sentiment;
    meta["journalism_targeting_events"] = journalism_events;
    write_meta(cfg.output_dir + "/newsflow_meta.json", std::move(meta));
}

// ---------------------------------------------------------------------
// synth

namespace {

civil::CivilDate json_date(const json& j, const char* key) {
    const auto d = civil::parse_date(j.at(key).get<std::string>());
    if (!d) throw ConfigError(std::string("bad date in '") + key + "'");
    return *d;
}

synth::PlantedStreamSpec planted_spec_from_json(const json& j) {
    synth::PlantedStreamSpec spec;
    for (const auto& b : j.at("blocs"))
        spec.blocs.push_back({b.at("label").get<std::string>(), b.at("size").get<std::int64_t>()});
    spec.n_users = j.at("n_users").get<std::int64_t>();
    spec.weeks = j.at("weeks").get<int>();
    spec.events_per_week = j.at("events_per_week").get<std::int64_t>();
    spec.p_in = j.at("p_in").get<double>();
    spec.p_out = j.at("p_out").get<double>();
    if (j.contains("activity_exponent"))
        spec.activity_exponent = j.at("activity_exponent").get<double>();
    if (j.contains("label_noise")) spec.label_noise = j.at("label_noise").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("topic_text")) spec.topic_text = j.at("topic_text").get<std::string>();
    if (j.contains("start_time")) {
        const auto t = civil::parse_rfc3339(j.at("start_time").get<std::string>());
        if (!t) throw ConfigError("bad start_time");
        spec.start_time = *t;
    }
    return spec;
}

struct DatasetSpec {
    std::uint64_t seed = 0;
    std::vector<ingest::StudyPeriod> periods;
    struct Bloc {
        std::string label;
        std::string party;
        std::int64_t size = 0;
    };
    std::vector<Bloc> blocs;
    std::int64_t nonpartisan = 0;
    std::int64_t seeds_per_bloc = 10;
    struct Stream {
        std::string topic_id;
        std::string keyword;
        std::int64_t events_per_week = 0;
        double p_in = 0.5, p_out = 0.5, activity_exponent = 0.0;
        double retweeted_news_fraction = 0.0;
    };
    Stream parties;
    std::vector<Stream> topics;
    struct News {
        std::int64_t articles_per_topic = 20;
        std::vector<std::string> outlets;
        std::int64_t events_per_week = 0;
        std::map<std::string, synth::SentimentDist> sentiment_by_bloc;
        std::map<std::string, double> share_weight_by_bloc;
        std::map<std::string, synth::EngagementMeans> engagement_by_bloc;
        double journalism_fraction = 0.0;
        std::string journalism_token = "toimittaja";
    };
    News news;
};

DatasetSpec dataset_spec_from_json(const json& j) {
    DatasetSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("periods")) {
        ingest::StudyPeriod period;
        period.name = p.at("name").get<std::string>();
        period.start = json_date(p, "start");
        period.end = json_date(p, "end");
        s.periods.push_back(std::move(period));
    }
    for (const auto& b : j.at("blocs"))
        s.blocs.push_back({b.at("label").get<std::string>(), b.at("party").get<std::string>(),
                           b.at("size").get<std::int64_t>()});
    if (j.contains("nonpartisan")) s.nonpartisan = j.at("nonpartisan").get<std::int64_t>();
    if (j.contains("seeds_per_bloc"))
        s.seeds_per_bloc = j.at("seeds_per_bloc").get<std::int64_t>();

    auto stream = [](const json& sj, const std::string& topic_id) {
        DatasetSpec::Stream st;
        st.topic_id = topic_id;
        st.keyword = sj.at("keyword").get<std::string>();
        st.events_per_week = sj.at("events_per_week").get<std::int64_t>();
        st.p_in = sj.at("p_in").get<double>();
        st.p_out = sj.at("p_out").get<double>();
        if (sj.contains("activity_exponent"))
            st.activity_exponent = sj.at("activity_exponent").get<double>();
        if (sj.contains("retweeted_news_fraction"))
            st.retweeted_news_fraction = sj.at("retweeted_news_fraction").get<double>();
        return st;
    };
    s.parties = stream(j.at("parties"), j.at("parties").value("topic_id", "parties"));
    for (const auto& t : j.at("topics"))
        s.topics.push_back(stream(t, t.at("topic_id").get<std::string>()));

    const auto& njs = j.at("news");
    s.news.articles_per_topic = njs.at("articles_per_topic").get<std::int64_t>();
    for (const auto& o : njs.at("outlets")) s.news.outlets.push_back(o.get<std::string>());
    s.news.events_per_week = njs.at("events_per_week").get<std::int64_t>();
    for (const auto& [bloc, dist] : njs.at("sentiment_by_bloc").items())
        s.news.sentiment_by_bloc[bloc] = {dist.at("neg").get<double>(),
                                          dist.at("neutral").get<double>(),
                                          dist.at("pos").get<double>()};
    for (const auto& [bloc, wgt] : njs.at("share_weight_by_bloc").items())
        s.news.share_weight_by_bloc[bloc] = wgt.get<double>();
    for (const auto& [bloc, e] : njs.at("engagement_by_bloc").items())
        s.news.engagement_by_bloc[bloc] = {e.at("likes").get<double>(),
                                           e.at("retweets").get<double>(),
                                           e.at("replies").get<double>()};
    if (njs.contains("journalism_fraction"))
        s.news.journalism_fraction = njs.at("journalism_fraction").get<double>();
    if (njs.contains("journalism_token"))
        s.news.journalism_token = njs.at("journalism_token").get<std::string>();
    return s;
}

void generate_dataset(const DatasetSpec& spec, const std::string& out_dir) {
    // Shared user pool: partisan blocs then nonpartisans.
    std::int64_t n_partisan = 0;
    for (const auto& b : spec.blocs) n_partisan += b.size;
    const std::int64_t n_total = n_partisan + spec.nonpartisan;
    if (n_total < 4) throw ConfigError("dataset: too few users");

    int width = 1;
    for (std::int64_t x = 10; x <= n_total; x *= 10) ++width;
    auto user_id = [&](std::int64_t i) {
        std::string digits = std::to_string(i);
        if (static_cast<int>(digits.size()) < width)
            digits.insert(0, static_cast<std::size_t>(width - static_cast<int>(digits.size())),
                          '0');
        return "u" + digits;
    };

    std::vector<std::vector<std::string>> partisan_members(spec.blocs.size());
    std::int64_t at = 0;
    for (std::size_t b = 0; b < spec.blocs.size(); ++b)
        for (std::int64_t i = 0; i < spec.blocs[b].size; ++i)
            partisan_members[b].push_back(user_id(at++));
    // Nonpartisans behave like bloc members in topic streams but never
    // appear in the parties stream.
    std::vector<std::vector<std::string>> mixed_members = partisan_members;
    std::vector<std::string> nonpartisan_ids;
    for (std::int64_t i = 0; i < spec.nonpartisan; ++i) {
        const auto id = user_id(at++);
        nonpartisan_ids.push_back(id);
        mixed_members[static_cast<std::size_t>(i) % spec.blocs.size()].push_back(id);
    }

    std::vector<InteractionEvent> all_events;
    civil::TimeZone utc = civil::TimeZone::utc();

    auto period_weeks = [&](const ingest::StudyPeriod& p) {
        const auto days = civil::days_from_civil(p.end.year, p.end.month, p.end.day) -
                          civil::days_from_civil(p.start.year, p.start.month, p.start.day) + 1;
        return static_cast<int>(days / 7);
    };
    auto period_start_time = [&](const ingest::StudyPeriod& p) {
        return utc.local_midnight(p.start);
    };

    // Per-period ground truth over partisan users.
    std::vector<Partition> truths;
    for (std::size_t pi = 0; pi < spec.periods.size(); ++pi) {
        std::vector<std::pair<std::string, std::uint32_t>> assignment;
        for (std::size_t b = 0; b < spec.blocs.size(); ++b)
            for (const auto& id : partisan_members[b])
                assignment.emplace_back(id, static_cast<std::uint32_t>(b));
        Partition truth =
            make_partition(std::move(assignment), static_cast<std::uint32_t>(spec.blocs.size()));
        for (const auto& b : spec.blocs) truth.labels.push_back(b.label);
        truths.push_back(std::move(truth));
    }

    for (std::size_t pi = 0; pi < spec.periods.size(); ++pi) {
        const auto& period = spec.periods[pi];
        const int weeks = period_weeks(period);
        const std::int64_t t0 = period_start_time(period);
        const std::string ptag = "p" + std::to_string(pi);

        // Parties stream over partisan users only.
        {
            synth::PlantedStreamSpec ps;
            for (const auto& b : spec.blocs) ps.blocs.push_back({b.label, 0});
            ps.bloc_members = partisan_members;
            ps.weeks = weeks;
            ps.events_per_week = spec.parties.events_per_week;
            ps.p_in = spec.parties.p_in;
            ps.p_out = spec.parties.p_out;
            ps.activity_exponent = spec.parties.activity_exponent;
            ps.seed = rng::derive(spec.seed, "parties-" + period.name);
            ps.topic_text = spec.parties.keyword;
            ps.id_prefix = ptag + "-par-";
            ps.start_time = t0;
            auto stream = synth::gen_planted_retweet_stream(ps);
            for (auto& e : stream.events) all_events.push_back(std::move(e));
        }

        // Analysis topic streams over the mixed pool.
        for (const auto& topic : spec.topics) {
            std::vector<std::string> article_urls;
            for (std::int64_t a = 0; a < spec.news.articles_per_topic; ++a) {
                const auto& outlet =
                    spec.news.outlets[static_cast<std::size_t>(a) % spec.news.outlets.size()];
                article_urls.push_back("https://" + outlet + "/a/" + topic.topic_id + "-" +
                                       std::to_string(a));
            }

            synth::PlantedStreamSpec ps;
            for (const auto& b : spec.blocs) ps.blocs.push_back({b.label, 0});
            ps.bloc_members = mixed_members;
            ps.weeks = weeks;
            ps.events_per_week = topic.events_per_week;
            ps.p_in = topic.p_in;
            ps.p_out = topic.p_out;
            ps.activity_exponent = topic.activity_exponent;
            ps.seed = rng::derive(spec.seed, topic.topic_id + "-" + period.name);
            ps.topic_text = topic.keyword;
            ps.id_prefix = ptag + "-" + topic.topic_id + "-";
            ps.start_time = t0;
            if (topic.retweeted_news_fraction > 0.0) {
                ps.retweeted_news_fraction = topic.retweeted_news_fraction;
                ps.retweeted_url_pool = article_urls;
            }
            auto stream = synth::gen_planted_retweet_stream(ps);
            for (auto& e : stream.events) all_events.push_back(std::move(e));

            // News sharing for this (topic, period).
            synth::NewsStreamSpec ns;
            ns.article_urls = article_urls;
            ns.sentiment_by_bloc = spec.news.sentiment_by_bloc;
            ns.share_weight_by_bloc = spec.news.share_weight_by_bloc;
            ns.engagement_by_bloc = spec.news.engagement_by_bloc;
            ns.total_events = spec.news.events_per_week * weeks;
            ns.seed = rng::derive(spec.seed, "news-" + topic.topic_id + "-" + period.name);
            ns.topic_text = topic.keyword;
            ns.id_prefix = ptag + "-n-" + topic.topic_id + "-";
            ns.start_time = t0;
            ns.duration_seconds = static_cast<std::int64_t>(weeks) * 7 * 86400;

            // Sharing pool: partisan blocs plus a Nonpartisan group.
            std::vector<std::pair<std::string, std::uint32_t>> assignment;
            for (std::size_t b = 0; b < spec.blocs.size(); ++b)
                for (const auto& id : partisan_members[b])
                    assignment.emplace_back(id, static_cast<std::uint32_t>(b));
            for (const auto& id : nonpartisan_ids)
                assignment.emplace_back(id, static_cast<std::uint32_t>(spec.blocs.size()));
            Partition pool = make_partition(std::move(assignment),
                                            static_cast<std::uint32_t>(spec.blocs.size() + 1));
            for (const auto& b : spec.blocs) pool.labels.push_back(b.label);
            pool.labels.push_back("Nonpartisan");

            auto news_events = synth::gen_news_sharing_events(ns, pool);
            if (spec.news.journalism_fraction > 0.0) {
                rng::Prng jr(rng::derive(ns.seed, "journalism"));
                for (auto& e : news_events)
                    if (jr.uniform01() < spec.news.journalism_fraction)
                        e.text += " " + spec.news.journalism_token;
            }
            for (auto& e : news_events) all_events.push_back(std::move(e));
        }
    }

    std::stable_sort(all_events.begin(), all_events.end(), [](const auto& a, const auto& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.id < b.id;
    });

    ensure_dir(out_dir);
    {
        auto out = open_out(out_dir + "/events.jsonl");
        ingest::write_events(out, all_events, ingest::EventFormat::jsonl);
    }
    for (std::size_t pi = 0; pi < spec.periods.size(); ++pi)
        write_partition_csv(out_dir + "/ground_truth_" + spec.periods[pi].name + ".csv",
                            truths[pi], spec.seed, "synthetic-truth");

    // Seed accounts: the first seeds_per_bloc users of each bloc.
    std::vector<seeds::SeedAccount> accounts;
    for (std::size_t b = 0; b < spec.blocs.size(); ++b) {
        const auto bloc = seeds::bloc_from_string(spec.blocs[b].label);
        if (!bloc)
            throw ConfigError("dataset: bloc label '" + spec.blocs[b].label +
                              "' is not a seed bloc name");
        const auto count = std::min<std::int64_t>(
            spec.seeds_per_bloc, static_cast<std::int64_t>(partisan_members[b].size()));
        for (std::int64_t i = 0; i < count; ++i) {
            seeds::SeedAccount acc;
            acc.author_id = partisan_members[b][static_cast<std::size_t>(i)];
            acc.handle = "@" + acc.author_id;
            acc.party = spec.blocs[b].party;
            acc.bloc = *bloc;
            acc.election_year = i % 2 == 0 ? 2019 : 2023;
            accounts.push_back(std::move(acc));
        }
    }
    seeds::write_seed_accounts(out_dir + "/seeds.csv", accounts);

    // Topic config covering the analysis topics and the parties topic.
    ordered_json topics_json;
    {
        std::vector<const DatasetSpec::Stream*> ts;
        for (const auto& t : spec.topics) ts.push_back(&t);
        std::sort(ts.begin(), ts.end(),
                  [](const auto* a, const auto* b) { return a->topic_id < b->topic_id; });
        for (const auto* t : ts) topics_json[t->topic_id] = std::vector<std::string>{t->keyword};
        topics_json[spec.parties.topic_id] = std::vector<std::string>{spec.parties.keyword};
    }
    {
        auto out = open_out(out_dir + "/topics.json");
        out << topics_json.dump(2) << "\n";
    }

    ordered_json meta;
    meta["tool"] = "polarscope";
    meta["command"] = "synth";
    meta["kind"] = "dataset";
    meta["seed"] = spec.seed;
    meta["events"] = static_cast<std::int64_t>(all_events.size());
    meta["users"] = n_total;
    meta["nonpartisan_users"] = spec.nonpartisan;
    write_meta(out_dir + "/synth_meta.json", std::move(meta));
}

} // namespace

void cmd_synth(const std::string& spec_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_override) {
    std::ifstream in(spec_path);
    if (!in) throw ConfigError("cannot open synth spec: " + spec_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(spec_path + ": invalid JSON: " + e.what());
    }
    const std::string kind = j.value("kind", "");
    if (seed_override) j["seed"] = *seed_override;

    if (kind == "planted_stream") {
        const auto spec = planted_spec_from_json(j);
        auto stream = synth::gen_planted_retweet_stream(spec);
        ensure_dir(out_dir);
        {
            auto out = open_out(out_dir + "/events.jsonl");
            ingest::write_events(out, stream.events, ingest::EventFormat::jsonl);
        }
        write_partition_csv(out_dir + "/ground_truth.csv", stream.ground_truth, spec.seed,
                            "synthetic-truth");
        ordered_json meta;
        meta["tool"] = "polarscope";
        meta["command"] = "synth";
        meta["kind"] = "planted_stream";
        meta["seed"] = spec.seed;
        meta["events"] = static_cast<std::int64_t>(stream.events.size());
        write_meta(out_dir + "/synth_meta.json", std::move(meta));
        return;
    }
    if (kind == "dataset") {
        const auto spec = dataset_spec_from_json(j);
        generate_dataset(spec, out_dir);
        return;
    }
    throw ConfigError(spec_path + ": unknown synth kind '" + kind +
                      "' (expected planted_stream or dataset)");
}

} // namespace polarscope::pipeline
