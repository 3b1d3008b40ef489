#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include <sentimarket/params.hpp>
#include <sentimarket/simulate.hpp>
#include <sentimarket/stats.hpp>

using sentimarket::acf;
using sentimarket::excess_kurtosis;
using sentimarket::hill_tail_exponent;
using sentimarket::StylizedFactsOptions;
using sentimarket::StylizedFactsReport;
using sentimarket::stylized_facts;

TEST_CASE("acf matches hand-computed values on a tiny series") {
    // x = 1 2 3 4: mean 2.5, centered sum of squares 5.
    std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    auto r = acf(x, 3);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(-0.30).epsilon(1e-15));
    CHECK(r[2] == doctest::Approx(-0.45).epsilon(1e-15));
}

TEST_CASE("acf of an alternating series is (n-h)/n times (-1)^h") {
    std::vector<double> x(100);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
    auto r = acf(x, 5);
    for (int h = 1; h <= 5; ++h) {
        double expected = ((100.0 - h) / 100.0) * ((h % 2 == 0) ? 1.0 : -1.0);
        CHECK(r[static_cast<std::size_t>(h - 1)] == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("acf of an AR(1) process decays geometrically") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double phi = 0.8;
    std::vector<double> x(200000);
    double prev = 0.0;
    for (auto& v : x) {
        prev = phi * prev + noise(rng);
        v = prev;
    }
    auto r = acf(x, 5);
    for (int h = 1; h <= 5; ++h)
        CHECK(r[static_cast<std::size_t>(h - 1)] ==
              doctest::Approx(std::pow(phi, h)).epsilon(0.03));
}

TEST_CASE("acf rejects bad lag counts and constant input") {
    std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(acf(x, 0), std::invalid_argument);
    CHECK_THROWS_AS(acf(x, 3), std::invalid_argument);
    std::vector<double> flat(50, 7.0);
    CHECK_THROWS_AS(acf(flat, 5), std::invalid_argument);
}

TEST_CASE("excess kurtosis matches closed forms on small samples") {
    std::vector<double> two_point{-1.0, -1.0, 1.0, 1.0};
    CHECK(excess_kurtosis(two_point) == doctest::Approx(-2.0).epsilon(1e-15));

    // mean 0, m2 = 2, m4 = 6.8 -> 6.8/4 - 3 = -1.3
    std::vector<double> ramp{-2.0, -1.0, 0.0, 1.0, 2.0};
    CHECK(excess_kurtosis(ramp) == doctest::Approx(-1.3).epsilon(1e-15));

    std::vector<double> tiny{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(excess_kurtosis(tiny), std::invalid_argument);
}

TEST_CASE("excess kurtosis recovers the population value for known laws") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 2.0);
    std::vector<double> g(1000000);
    for (auto& v : g) v = gauss(rng);
    CHECK(std::abs(excess_kurtosis(g)) < 0.05);

    // Difference of two iid exponentials is Laplace, excess kurtosis 3.
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> lap(1000000);
    for (auto& v : lap) v = expo(rng) - expo(rng);
    CHECK(excess_kurtosis(lap) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("hill estimator nails an exact Pareto sample") {
    // Deterministic probability grid through the inverse CDF x = u^(-1/3),
    // so the only deviation from 3 is estimator bias, not sampling noise.
    const std::size_t n = 100000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        x[i] = std::pow(u, -1.0 / 3.0);
    }
    CHECK(hill_tail_exponent(x, 0.05) == doctest::Approx(3.0).epsilon(0.02));

    std::mt19937_64 rng(4321);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (auto& v : x) v = std::pow(u01(rng), -1.0 / 3.0);
    double estimate = hill_tail_exponent(x, 0.05);
    CHECK(estimate > 2.7);
    CHECK(estimate < 3.3);
}

TEST_CASE("hill estimator ignores sign and scale") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> x(20000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = std::pow(u01(rng), -0.5);
        x[i] = (i % 2 == 0) ? v : -v;
    }
    double base = hill_tail_exponent(x, 0.05);
    std::vector<double> scaled = x;
    for (auto& v : scaled) v *= 173.25;
    CHECK(hill_tail_exponent(scaled, 0.05) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("hill estimator refuses undersized or degenerate samples") {
    std::vector<double> x(499, 1.0);
    CHECK_THROWS_AS(hill_tail_exponent(x, 0.05), std::invalid_argument);

    std::vector<double> y(500);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i + 1);
    CHECK_THROWS_AS(hill_tail_exponent(y, 0.01), std::invalid_argument);  // k = 5 < 20

    std::vector<double> zeros(1000, 0.0);
    CHECK_THROWS_AS(hill_tail_exponent(zeros, 0.05), std::invalid_argument);
}

TEST_CASE("stylized facts on iid gaussian noise: no clustering, no fat tails") {
    std::mt19937_64 rng(314);
    std::normal_distribution<double> gauss(0.0, 0.01);
    std::vector<double> x(20000);
    for (auto& v : x) v = gauss(rng);

    StylizedFactsReport rep = stylized_facts(x);
    CHECK(rep.n == x.size());
    CHECK(rep.max_lag == 20);
    CHECK(rep.band == doctest::Approx(2.0 / std::sqrt(20000.0)).epsilon(1e-14));
    CHECK(rep.acf_returns.size() == 20);
    CHECK(rep.acf_abs_returns.size() == 20);
    CHECK(rep.returns_uncorrelated);
    CHECK_FALSE(rep.volatility_clustering);
    CHECK_FALSE(rep.fat_tails);
    CHECK(std::abs(rep.excess_kurtosis) < 0.2);
}

TEST_CASE("stylized facts flags agree with a recomputation from the report fields") {
    sentimarket::ModelParams p;
    p.lambda = 1.1;
    p.sigma0 = 0.01;
    p.beta = 0.001;
    p.alpha = sentimarket::kDefaultAlpha;
    p.max_group_size = 5;
    sentimarket::SimulateOptions opts;
    opts.steps = 10000;
    opts.seed = sentimarket::stream_seed(1234, 1);
    auto path = sentimarket::simulate_path(p, opts);

    StylizedFactsReport rep = stylized_facts(path.returns);

    int inside = 0;
    for (double v : rep.acf_returns)
        if (std::abs(v) <= rep.band + 1e-12) ++inside;
    bool uncorr = inside >= static_cast<int>(0.9 * rep.acf_returns.size());
    CHECK(rep.returns_uncorrelated == uncorr);

    double mean_abs = 0.0;
    for (double v : rep.acf_abs_returns) mean_abs += v;
    mean_abs /= static_cast<double>(rep.acf_abs_returns.size());
    CHECK(rep.volatility_clustering == (mean_abs > rep.band));
    CHECK(rep.fat_tails == (rep.excess_kurtosis > 1.0));

    CHECK(rep.returns_uncorrelated);
    CHECK(rep.volatility_clustering);
    CHECK(rep.fat_tails);
    REQUIRE(rep.hill_exponent.has_value());
    CHECK(*rep.hill_exponent > 0.0);
}

TEST_CASE("stylized facts omit the tail estimate when the sample is too short") {
    std::mt19937_64 rng(555);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(300);
    for (auto& v : x) v = gauss(rng);

    StylizedFactsOptions opts;
    opts.max_lag = 10;
    StylizedFactsReport rep = stylized_facts(x, opts);
    CHECK_FALSE(rep.hill_exponent.has_value());
    CHECK(rep.acf_returns.size() == 10);
}
