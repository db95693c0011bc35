#include <benchmark/benchmark.h>

#include "polarscope/logomega.hpp"
#include "polarscope/partition.hpp"
#include "polarscope/polarization.hpp"
#include "polarscope/prng.hpp"

using namespace polarscope;

namespace {

void BM_LogOmega3x3(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const std::vector<std::int64_t> rows{n / 3, n / 3, n - 2 * (n / 3)};
    const std::vector<std::int64_t> cols{n / 2, n / 4, n - n / 2 - n / 4};
    for (auto _ : state) {
        auto r = polarization::log_omega(rows, cols);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_LogOmega3x3)->Arg(300)->Arg(1000)->Arg(2000);

void BM_LogOmegaTwoRow(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const std::vector<std::int64_t> rows{n / 2, n - n / 2};
    std::vector<std::int64_t> cols(static_cast<std::size_t>(n), 1);
    for (auto _ : state) {
        auto r = polarization::log_omega(rows, cols);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_LogOmegaTwoRow)->Arg(1000)->Arg(10000);

Partition random_partition(std::uint64_t seed, std::int64_t n, std::uint32_t groups) {
    rng::Prng prng(seed);
    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    for (std::int64_t i = 0; i < n; ++i)
        assignment.emplace_back("u" + std::to_string(1000000 + i),
                                static_cast<std::uint32_t>(prng.below(groups)));
    return make_partition(std::move(assignment), groups);
}

void BM_Rmi(benchmark::State& state) {
    const auto a = random_partition(1, state.range(0), 3);
    const auto b = random_partition(2, state.range(0), 3);
    for (auto _ : state) {
        auto r = polarization::rmi(a, b);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_Rmi)->Arg(500)->Arg(1500)->Unit(benchmark::kMicrosecond);

} // namespace
