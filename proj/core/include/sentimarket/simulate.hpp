#pragma once

#include <cstddef>
#include <cstdint>

#include "sentimarket/errors.hpp"
#include "sentimarket/params.hpp"
#include "sentimarket/transitions.hpp"

namespace sentimarket {

// One simulated trajectory. All per-step vectors share the same length T and
// hold steps t = 1..T; the t = 0 state lives in the initial_* fields.
struct SimulatedPath {
    std::vector<double> bullishness;       // B(t)
    std::vector<double> sentiment_return;  // RB(t) = (B(t) - B(t-1)) / B(t-1)
    std::vector<double> volatility;        // sigma(t)
    std::vector<double> news;              // eta(t)
    std::vector<double> returns;           // r(t) = RB(t)/lambda + eta(t)
    std::vector<double> price;             // P(t) = P(t-1) * (1 + r(t))
    double initial_bullishness = 0.5;
    double initial_price = 1.0;

    std::size_t size() const noexcept { return returns.size(); }
};

struct SimulateOptions {
    std::size_t steps = 10000;
    std::uint64_t seed = 0;
    double initial_price = 1.0;
    bool zero_noise = false;  // eta(t) = 0 throughout; isolates the deterministic skeleton
};

// Raised when bullishness falls below kBullishnessFloor mid-simulation.
// Carries everything computed up to the failing step.
class PathCollapse : public SentimentCollapse {
public:
    PathCollapse(std::size_t step, SimulatedPath partial);

    const SimulatedPath& partial_path() const noexcept { return partial_; }

private:
    SimulatedPath partial_;
};

// Runs the full feedback loop for opts.steps steps:
// communication round -> sentiment return -> conditional volatility -> news
// draw -> market return -> transition update -> price. Reproducible: the same
// params, steps and seed give the same path bit for bit.
SimulatedPath simulate_path(const ModelParams& params, const SimulateOptions& opts);

// Decorrelated per-path seed for batch runs driven by one master seed.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t path_index);

}  // namespace sentimarket
