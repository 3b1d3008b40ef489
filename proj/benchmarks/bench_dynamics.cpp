#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sentimarket/dynamics.hpp"

using namespace sentimarket;

namespace {

TransitionState perturbed_state(int L) {
    TransitionState m = neutral_transitions(L);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ret(-0.02, 0.02);
    for (int i = 0; i < 100; ++i) m.update(ret(rng), 1.0);
    return m;
}

void BM_sentiment_step(benchmark::State& state) {
    int L = static_cast<int>(state.range(0));
    TransitionState m = perturbed_state(L);
    std::vector<double> w(static_cast<std::size_t>(L), 1.0 / L);
    double b = 0.47;
    for (auto _ : state) {
        b = sentiment_step(b, m, w);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_sentiment_step)->Arg(5)->Arg(20);

void BM_transition_update(benchmark::State& state) {
    int L = static_cast<int>(state.range(0));
    TransitionState m = perturbed_state(L);
    double r = 0.003;
    for (auto _ : state) {
        m.update(r, 15.0);
        r = -r;
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_transition_update)->Arg(5)->Arg(20);

}  // namespace
