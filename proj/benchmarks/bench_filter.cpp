#include <benchmark/benchmark.h>

#include "sentimarket/filter.hpp"
#include "sentimarket/simulate.hpp"

using namespace sentimarket;

namespace {

void BM_simulate_path(benchmark::State& state) {
    ModelParams params;
    SimulateOptions opts;
    opts.steps = static_cast<std::size_t>(state.range(0));
    opts.seed = 1;
    for (auto _ : state) {
        SimulatedPath path = simulate_path(params, opts);
        benchmark::DoNotOptimize(path);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_path)->Arg(2000)->Arg(10000);

void BM_log_likelihood(benchmark::State& state) {
    ModelParams params;
    SimulateOptions opts;
    opts.steps = static_cast<std::size_t>(state.range(0));
    opts.seed = 2;
    SimulatedPath path = simulate_path(params, opts);
    for (auto _ : state) {
        double ll = log_likelihood(params, path.returns);
        benchmark::DoNotOptimize(ll);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_log_likelihood)->Arg(2000)->Arg(10000);

void BM_loglik_gradient_fd(benchmark::State& state) {
    ModelParams params;
    SimulateOptions opts;
    opts.steps = 2000;
    opts.seed = 3;
    SimulatedPath path = simulate_path(params, opts);
    for (auto _ : state) {
        auto grad = loglik_gradient_fd(params, path.returns);
        benchmark::DoNotOptimize(grad);
    }
}
BENCHMARK(BM_loglik_gradient_fd);

}  // namespace
