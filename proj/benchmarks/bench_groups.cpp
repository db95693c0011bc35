#include <benchmark/benchmark.h>

#include "polarscope/graphs.hpp"
#include "polarscope/groups.hpp"
#include "polarscope/synth.hpp"

using namespace polarscope;

namespace {

graphs::EndorsementGraph planted_graph(std::int64_t users, std::int64_t events,
                                       std::uint64_t seed) {
    synth::PlantedStreamSpec spec;
    spec.blocs = {{"a", users / 3}, {"b", users / 3}, {"c", users - 2 * (users / 3)}};
    spec.n_users = users;
    spec.weeks = 1;
    spec.events_per_week = events;
    spec.p_in = 0.85;
    spec.p_out = 0.08;
    spec.activity_exponent = 0.6;
    spec.seed = seed;
    const auto stream = synth::gen_planted_retweet_stream(spec);
    return graphs::build_endorsement_graph(stream.events, {0, 0, 1LL << 40});
}

void BM_InferPartition(benchmark::State& state) {
    const auto g = planted_graph(state.range(0), state.range(1), 99);
    groups::InferOptions opts;
    opts.restarts = 1;
    for (auto _ : state) {
        auto p = groups::infer_partition(g, 3, 7, opts);
        benchmark::DoNotOptimize(p.score);
    }
    state.SetLabel(std::to_string(g.nodes.size()) + " nodes, " +
                   std::to_string(g.event_count) + " events");
}
BENCHMARK(BM_InferPartition)
    ->Args({300, 3000})
    ->Args({900, 9000})
    ->Args({1500, 15000})
    ->Unit(benchmark::kMillisecond);

void BM_SelectModel(benchmark::State& state) {
    const auto g = planted_graph(state.range(0), state.range(1), 42);
    groups::InferOptions opts;
    opts.restarts = 2;
    for (auto _ : state) {
        auto res = groups::select_model(g, 3, 11, opts);
        benchmark::DoNotOptimize(res.chosen_b);
    }
    state.SetLabel(std::to_string(g.nodes.size()) + " nodes");
}
BENCHMARK(BM_SelectModel)->Args({600, 6000})->Unit(benchmark::kMillisecond);

void BM_BuildEndorsementGraph(benchmark::State& state) {
    synth::PlantedStreamSpec spec;
    spec.blocs = {{"a", 500}, {"b", 500}};
    spec.n_users = 1000;
    spec.weeks = 1;
    spec.events_per_week = state.range(0);
    spec.p_in = 0.8;
    spec.p_out = 0.2;
    spec.seed = 5;
    const auto stream = synth::gen_planted_retweet_stream(spec);
    for (auto _ : state) {
        auto g = graphs::build_endorsement_graph(stream.events, {0, 0, 1LL << 40});
        benchmark::DoNotOptimize(g.event_count);
    }
}
BENCHMARK(BM_BuildEndorsementGraph)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace
