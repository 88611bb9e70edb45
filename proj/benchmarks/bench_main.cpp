// Timings for the main algorithms on the bench workload (uniform centers,
// radii in [0.5, 1.5] times the base radius) plus the two batched range
// searches they depend on.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "geogirth/disk_triangle.hpp"
#include "geogirth/generator.hpp"
#include "geogirth/girth.hpp"
#include "geogirth/range_search.hpp"
#include "geogirth/tx_triangle.hpp"

namespace {

using namespace geogirth;

SiteSet instance(benchmark::State& state) { return generate(bench_spec(static_cast<std::size_t>(state.range(0)), 1)); }

void finish(benchmark::State& state) { state.SetComplexityN(state.range(0)); }

void BM_TriangleDetection(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(find_triangle_disk(s));
    finish(state);
}

void BM_ShortestTriangle(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(shortest_triangle_disk(s, 1));
    finish(state);
}

void BM_Girth(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(girth_unweighted(s));
    finish(state);
}

void BM_WeightedGirth(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(weighted_girth_disk(s, 1));
    finish(state);
}

void BM_TxTriangle(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(find_directed_triangle(s));
    finish(state);
}

void BM_TxShortestTriangle(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(shortest_triangle_tx(s, 1));
    finish(state);
}

void BM_OutEdgeLists(benchmark::State& state) {
    const SiteSet s = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(solve_R1(s));
    finish(state);
}

// Sites that no other disk covers, found with a grid of side r_max.
std::vector<int> uncovered_sites(const SiteSet& s) {
    double r_max = 0.0;
    for (const Site& x : s) r_max = std::max(r_max, x.r);
    auto key = [&](double x, double y) {
        return std::pair{static_cast<std::int64_t>(std::floor(x / r_max)), static_cast<std::int64_t>(std::floor(y / r_max))};
    };
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> grid;
    for (std::size_t i = 0; i < s.size(); ++i) grid[key(s[i].x, s[i].y)].push_back(static_cast<int>(i));
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto [cx, cy] = key(s[i].x, s[i].y);
        bool covered = false;
        for (std::int64_t dx = -1; dx <= 1 && !covered; ++dx) {
            for (std::int64_t dy = -1; dy <= 1 && !covered; ++dy) {
                const auto it = grid.find({cx + dx, cy + dy});
                if (it == grid.end()) continue;
                for (int u : it->second) {
                    if (u != static_cast<int>(i) && tx_edge(s[static_cast<std::size_t>(u)], s[i])) covered = true;
                }
            }
        }
        if (!covered) out.push_back(static_cast<int>(i));
    }
    return out;
}

// Every query is unanswerable, so the whole batch is processed, and the
// random radius ranges spread the queries over many canonical nodes.
void BM_RadiusRangeQueries(benchmark::State& state) {
    const SiteSet s = instance(state);
    std::vector<double> radii;
    for (const Site& x : s) radii.push_back(x.r);
    std::sort(radii.begin(), radii.end());
    std::mt19937_64 rng(5);
    std::vector<R2Query> queries;
    for (int q : uncovered_sites(s)) {
        std::size_t a = rng() % radii.size(), b = rng() % radii.size();
        if (a > b) std::swap(a, b);
        queries.push_back({q, radii[a], std::nextafter(radii[b], 2 * radii[b])});
    }
    for (auto _ : state) {
        if (solve_R2(s, queries)) state.SkipWithError("query unexpectedly answered");
    }
    state.counters["queries"] = static_cast<double>(queries.size());
    finish(state);
}

constexpr std::int64_t kMin = 1 << 12;
constexpr std::int64_t kMax = 1 << 15;

BENCHMARK(BM_TriangleDetection)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_ShortestTriangle)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_Girth)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_WeightedGirth)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_TxTriangle)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_TxShortestTriangle)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_OutEdgeLists)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_RadiusRangeQueries)->RangeMultiplier(2)->Range(kMin, kMax)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
