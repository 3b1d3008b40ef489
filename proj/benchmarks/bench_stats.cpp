#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sentimarket/stats.hpp"

using namespace sentimarket;

namespace {

std::vector<double> gaussian_sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.01);
    std::vector<double> x(n);
    for (double& v : x) v = normal(rng);
    return x;
}

void BM_acf(benchmark::State& state) {
    auto x = gaussian_sample(static_cast<std::size_t>(state.range(0)), 9);
    for (auto _ : state) {
        auto rho = acf(x, 20);
        benchmark::DoNotOptimize(rho);
    }
}
BENCHMARK(BM_acf)->Arg(10000);

void BM_hill_tail_exponent(benchmark::State& state) {
    auto x = gaussian_sample(static_cast<std::size_t>(state.range(0)), 10);
    for (auto _ : state) {
        double xi = hill_tail_exponent(x, 0.05);
        benchmark::DoNotOptimize(xi);
    }
}
BENCHMARK(BM_hill_tail_exponent)->Arg(100000);

void BM_stylized_facts(benchmark::State& state) {
    auto x = gaussian_sample(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        StylizedFactsReport rep = stylized_facts(x);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_stylized_facts)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
