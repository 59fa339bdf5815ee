#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "hrgvc/generator.hpp"
#include "hrgvc/vertex_cover.hpp"

namespace {

// average degree close to 8 at alpha = 0.75
constexpr double kAlpha = 0.75;
constexpr double kC = -0.67;

const hrgvc::Graph& cached_graph(std::uint64_t n) {
    static std::map<std::uint64_t, hrgvc::Graph> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, hrgvc::generate({hrgvc::ModelParams(n, kAlpha, kC), 1})).first;
    }
    return it->second;
}

void BM_GenerateAccelerated(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const hrgvc::ModelParams params(n, kAlpha, kC);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto g = hrgvc::generate({params, seed++, hrgvc::SamplingMode::FixedN, hrgvc::EdgeBuilder::Accelerated});
        benchmark::DoNotOptimize(g.edge_count());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateAccelerated)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_GenerateNaive(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const hrgvc::ModelParams params(n, kAlpha, kC);
    for (auto _ : state) {
        auto g = hrgvc::generate({params, 1, hrgvc::SamplingMode::FixedN, hrgvc::EdgeBuilder::Naive});
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_GenerateNaive)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_StandardGreedy(benchmark::State& state) {
    const auto& g = cached_graph(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hrgvc::standard_greedy(g).size());
    state.counters["m"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_StandardGreedy)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_AdaptedGreedyDegree(benchmark::State& state) {
    const auto& g = cached_graph(static_cast<std::uint64_t>(state.range(0)));
    const auto limit = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(hrgvc::adapted_greedy_degree(g, limit).size());
}
BENCHMARK(BM_AdaptedGreedyDegree)
    ->ArgsProduct({{1000, 10000, 100000}, {2, 25}})
    ->Unit(benchmark::kMillisecond);

void BM_AdaptedGreedyRadius(benchmark::State& state) {
    const auto& g = cached_graph(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hrgvc::adapted_greedy_radius(g, 1.0).size());
}
BENCHMARK(BM_AdaptedGreedyRadius)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_ExactCover(benchmark::State& state) {
    const auto& g = cached_graph(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto r = hrgvc::exact_cover(g, std::chrono::seconds(60));
        benchmark::DoNotOptimize(r.upper_bound);
    }
}
BENCHMARK(BM_ExactCover)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
