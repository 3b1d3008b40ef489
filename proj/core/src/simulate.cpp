#include "sentimarket/simulate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sentimarket/dynamics.hpp"

namespace sentimarket {

PathCollapse::PathCollapse(std::size_t step, SimulatedPath partial)
    : SentimentCollapse("sentiment collapsed to zero at step " + std::to_string(step), step),
      partial_(std::move(partial)) {}

SimulatedPath simulate_path(const ModelParams& params, const SimulateOptions& opts) {
    params.validate();
    std::vector<double> weights = params.effective_weights();

    SimulatedPath path;
    path.initial_bullishness = params.initial_bullishness;
    path.initial_price = opts.initial_price;
    path.bullishness.reserve(opts.steps);
    path.sentiment_return.reserve(opts.steps);
    path.volatility.reserve(opts.steps);
    path.news.reserve(opts.steps);
    path.returns.reserve(opts.steps);
    path.price.reserve(opts.steps);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    TransitionState m = neutral_transitions(params.max_group_size);
    double b_prev = params.initial_bullishness;
    double p_prev = opts.initial_price;

    for (std::size_t t = 1; t <= opts.steps; ++t) {
        if (b_prev < kBullishnessFloor) throw PathCollapse(t, std::move(path));

        double b = sentiment_step(b_prev, m, weights);
        double rb = bullishness_return(b, b_prev);
        double sigma = conditional_volatility(rb, params.sigma0, params.beta);
        double eta = opts.zero_noise ? 0.0 : sigma * unit_normal(rng);
        double r = rb / params.lambda + eta;
        m.update(r, params.alpha);
        double p = p_prev * (1.0 + r);

        path.bullishness.push_back(b);
        path.sentiment_return.push_back(rb);
        path.volatility.push_back(sigma);
        path.news.push_back(eta);
        path.returns.push_back(r);
        path.price.push_back(p);

        b_prev = b;
        p_prev = p;
    }
    return path;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t path_index) {
    // splitmix64 finalizer over master + index step; decorrelates adjacent
    // indices far better than master + index itself would.
    std::uint64_t z = master_seed + (path_index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace sentimarket
