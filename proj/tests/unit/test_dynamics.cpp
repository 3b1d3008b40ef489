#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <span>
#include <vector>

#include <doctest.h>

#include "sentimarket/dynamics.hpp"
#include "sentimarket/params.hpp"

using namespace sentimarket;

namespace {

// Straightforward reimplementation with lgamma binomials and std::pow,
// deliberately sharing no code path with the production kernel.
double naive_sentiment_step(double b, const TransitionState& m, std::span<const double> w) {
    double out = 0.0;
    for (int k = 1; k <= m.max_group_size(); ++k) {
        double inner = 0.0;
        for (int j = 0; j <= k; ++j) {
            double binom = std::exp(log_binomial_coefficient(k, j));
            inner += m.value(k, j) * binom * std::pow(b, j) * std::pow(1.0 - b, k - j);
        }
        out += w[static_cast<std::size_t>(k) - 1] * inner;
    }
    return out;
}

std::vector<double> uniform_weights(int L) {
    return std::vector<double>(static_cast<std::size_t>(L), 1.0 / L);
}

}  // namespace

TEST_CASE("neutral transitions leave bullishness unchanged") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        int L = 1 + static_cast<int>(rng() % 20);
        double b = unit(rng);
        TransitionState m = neutral_transitions(L);
        auto w = uniform_weights(L);
        CHECK(std::abs(sentiment_step(b, m, w) - b) < 1e-12);
    }
}

TEST_CASE("the fixed point holds for non-uniform weights too") {
    TransitionState m = neutral_transitions(4);
    std::vector<double> w{0.1, 0.0, 0.65, 0.25};
    for (double b : {0.0, 0.015, 0.3, 0.5, 0.77, 1.0})
        CHECK(std::abs(sentiment_step(b, m, w) - b) < 1e-14);
}

TEST_CASE("sentiment_step agrees with a naive reimplementation") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> ret(-0.2, 0.2);
    for (int trial = 0; trial < 50; ++trial) {
        int L = 1 + static_cast<int>(rng() % 12);
        TransitionState m = neutral_transitions(L);
        for (int step = 0; step < 30; ++step) m.update(ret(rng), 1.0);
        auto w = uniform_weights(L);
        double b = unit(rng);
        double fast = sentiment_step(b, m, w);
        double slow = naive_sentiment_step(b, m, w);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
        CHECK(fast >= 0.0);
        CHECK(fast <= 1.0);
    }
}

TEST_CASE("a single-agent model is the linear map it should be") {
    TransitionState m = neutral_transitions(1);
    std::vector<double> w{1.0};
    // m[1][0] = 0 and m[1][1] = 1, so B' = 0*(1-B) + 1*B.
    CHECK(sentiment_step(0.25, m, w) == doctest::Approx(0.25).epsilon(1e-15));
    m.update(-0.5, 1.0);  // m[1][1] = e^{-0.5}
    CHECK(sentiment_step(0.25, m, w) == doctest::Approx(0.25 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("sentiment_step validates its inputs") {
    TransitionState m = neutral_transitions(3);
    auto w = uniform_weights(3);
    CHECK_THROWS_AS(sentiment_step(-0.1, m, w), std::domain_error);
    CHECK_THROWS_AS(sentiment_step(1.1, m, w), std::domain_error);
    CHECK_THROWS_AS(sentiment_step(std::nan(""), m, w), std::domain_error);
    auto short_w = uniform_weights(2);
    CHECK_THROWS_AS(sentiment_step(0.5, m, short_w), std::invalid_argument);
}

TEST_CASE("bullishness_return is the relative change") {
    CHECK(bullishness_return(0.6, 0.5) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(bullishness_return(0.45, 0.5) == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(bullishness_return(0.5, 0.5) == 0.0);
    CHECK(bullishness_return(0.0, 0.5) == -1.0);
}

TEST_CASE("bullishness_return refuses a collapsed denominator") {
    CHECK_THROWS_AS(bullishness_return(0.5, 0.5e-10), std::domain_error);
    CHECK_THROWS_AS(bullishness_return(0.5, 0.0), std::domain_error);
    // Exactly at the floor is still legal.
    CHECK_NOTHROW(bullishness_return(0.5, kBullishnessFloor));
}

TEST_CASE("conditional_volatility responds to the magnitude of the move") {
    CHECK(conditional_volatility(0.0, 0.01, 0.001) == 0.01);
    CHECK(conditional_volatility(0.002, 0.01, 0.001) ==
          doctest::Approx(0.01 * std::exp(2.0)).epsilon(1e-14));
    CHECK(conditional_volatility(-0.002, 0.01, 0.001) ==
          conditional_volatility(0.002, 0.01, 0.001));

    // Never below the baseline, and overflow degrades to +inf, not a throw.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> move(-1.0, 1.0);
    for (int i = 0; i < 100; ++i)
        CHECK(conditional_volatility(move(rng), 0.01, 0.2) >= 0.01);
    CHECK(conditional_volatility(1.0, 0.01, 1e-6) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("conditional_volatility validates scales") {
    CHECK_THROWS_AS(conditional_volatility(0.0, 0.0, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(conditional_volatility(0.0, 0.01, -1.0), std::invalid_argument);
}
