#include <benchmark/benchmark.h>

#include <random>

#include "tdanorms/cloud.hpp"
#include "tdanorms/persistence.hpp"

namespace {

// Scale roughly matches daily index log returns.
tdanorms::DistanceMatrix gaussian_cloud(std::size_t n, std::size_t k, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.01);
    std::vector<double> coords(n * k);
    for (double& x : coords) x = normal(rng);
    return tdanorms::distance_matrix(tdanorms::PointCloud(k, std::move(coords)));
}

void BM_RipsPersistence(benchmark::State& state) {
    const auto d = gaussian_cloud(static_cast<std::size_t>(state.range(0)), 4, 7);
    for (auto _ : state) {
        auto diagram = tdanorms::rips_persistence(d);
        benchmark::DoNotOptimize(diagram);
    }
    state.SetComplexityN(state.range(0));
}
// 1, 3, 6 and 12 months of trading days.
BENCHMARK(BM_RipsPersistence)->Arg(22)->Arg(66)->Arg(126)->Arg(252)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ExplicitReduction(benchmark::State& state) {
    const auto d = gaussian_cloud(static_cast<std::size_t>(state.range(0)), 4, 11);
    const double r = tdanorms::enclosing_radius(d);
    for (auto _ : state) {
        auto filtration = tdanorms::rips_filtration(d, 2, r);
        auto diagram = tdanorms::compute_persistence(filtration, d.size());
        benchmark::DoNotOptimize(diagram);
    }
}
BENCHMARK(BM_ExplicitReduction)->Arg(22)->Arg(44)->Arg(66)->Unit(benchmark::kMillisecond);

void BM_DistanceMatrix(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<double> coords(static_cast<std::size_t>(state.range(0)) * 4);
    for (double& x : coords) x = normal(rng);
    tdanorms::PointCloud cloud(4, coords);
    for (auto _ : state) {
        auto d = tdanorms::distance_matrix(cloud);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DistanceMatrix)->Arg(252);

}  // namespace
