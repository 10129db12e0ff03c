#include <benchmark/benchmark.h>

#include <random>

#include "tdanorms/econ.hpp"

namespace {

void BM_OlsNeweyWest(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t t = 0; t < n; ++t) {
        x1[t] = normal(rng);
        x2[t] = normal(rng);
        y[t] = 0.5 + x1[t] - 0.3 * x2[t] + normal(rng);
    }
    std::vector<tdanorms::NamedSeries> regressors{{"x1", x1}, {"x2", x2}};
    for (auto _ : state) {
        auto r = tdanorms::ols_newey_west(y, regressors);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_OlsNeweyWest)->Arg(171)->Arg(342);

void BM_Spearman(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal;
    std::vector<double> x(342), y(342);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = normal(rng);
        y[t] = x[t] + normal(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(tdanorms::spearman(x, y));
}
BENCHMARK(BM_Spearman);

}  // namespace
