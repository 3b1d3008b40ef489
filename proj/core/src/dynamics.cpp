#include "sentimarket/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sentimarket/params.hpp"

namespace sentimarket {

double sentiment_step(double bullishness, const TransitionState& m,
                      std::span<const double> weights) {
    int L = m.max_group_size();
    if (!(bullishness >= 0.0) || !(bullishness <= 1.0))
        throw std::domain_error("bullishness must lie in [0, 1]");
    if (weights.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("weights must have one entry per group size");

    double q = 1.0 - bullishness;
    std::vector<double> pow_b(static_cast<std::size_t>(L) + 1);
    std::vector<double> pow_q(static_cast<std::size_t>(L) + 1);
    pow_b[0] = 1.0;
    pow_q[0] = 1.0;
    for (int i = 1; i <= L; ++i) {
        pow_b[i] = pow_b[i - 1] * bullishness;
        pow_q[i] = pow_q[i - 1] * q;
    }

    const std::vector<double>& mv = m.values();
    double total = 0.0;
    std::size_t idx = 0;
    for (int k = 1; k <= L; ++k) {
        double inner = 0.0;
        for (int j = 0; j <= k; ++j, ++idx) {
            double prob = static_cast<double>(binomial_coefficient(k, j)) *
                          pow_b[static_cast<std::size_t>(j)] *
                          pow_q[static_cast<std::size_t>(k - j)];
            inner += mv[idx] * prob;
        }
        total += weights[static_cast<std::size_t>(k - 1)] * inner;
    }

    // The mixture is a convex combination of values in [0, 1]; rounding can
    // still push the sum a few ulps outside, so clip.
    if (total < 0.0) total = 0.0;
    if (total > 1.0) total = 1.0;
    return total;
}

double bullishness_return(double bullishness_now, double bullishness_prev) {
    if (!(bullishness_prev >= kBullishnessFloor))
        throw std::domain_error("previous bullishness below collapse floor");
    return (bullishness_now - bullishness_prev) / bullishness_prev;
}

double conditional_volatility(double sentiment_return, double sigma0, double beta) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    return sigma0 * std::exp(std::abs(sentiment_return) / beta);
}

}  // namespace sentimarket
