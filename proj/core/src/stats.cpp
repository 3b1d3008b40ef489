#include "sentimarket/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace sentimarket {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace

std::vector<double> acf(std::span<const double> x, int max_lag) {
    auto n = x.size();
    if (n < 2) throw std::invalid_argument("acf needs at least two observations");
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= n)
        throw std::invalid_argument("max_lag must satisfy 1 <= max_lag < n");

    double mu = mean_of(x);
    double denom = 0.0;
    for (double v : x) denom += (v - mu) * (v - mu);
    if (!(denom > 0.0)) throw std::invalid_argument("acf is undefined for a constant series");

    std::vector<double> rho(static_cast<std::size_t>(max_lag));
    for (int h = 1; h <= max_lag; ++h) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(h) < n; ++t)
            num += (x[t] - mu) * (x[t + static_cast<std::size_t>(h)] - mu);
        rho[static_cast<std::size_t>(h) - 1] = num / denom;
    }
    return rho;
}

double excess_kurtosis(std::span<const double> x) {
    auto n = x.size();
    if (n < 4) throw std::invalid_argument("excess_kurtosis needs at least four observations");
    double mu = mean_of(x);
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        double d = v - mu;
        double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0))
        throw std::invalid_argument("excess_kurtosis is undefined for a constant series");
    return m4 / (m2 * m2) - 3.0;
}

double hill_tail_exponent(std::span<const double> x, double tail_fraction) {
    auto n = x.size();
    if (!(tail_fraction > 0.0) || !(tail_fraction < 1.0))
        throw std::invalid_argument("tail_fraction must lie in (0, 1)");
    if (n < 500)
        throw std::invalid_argument("hill estimator needs at least 500 observations, got " +
                                    std::to_string(n));
    auto k = static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n)));
    if (k < 20)
        throw std::invalid_argument("tail of " + std::to_string(k) +
                                    " points is too small; need at least 20");

    std::vector<double> magnitude(x.size());
    std::transform(x.begin(), x.end(), magnitude.begin(), [](double v) { return std::abs(v); });
    // Only the k+1 largest magnitudes matter; bring them to the front.
    std::nth_element(magnitude.begin(), magnitude.begin() + static_cast<std::ptrdiff_t>(k),
                     magnitude.end(), std::greater<double>());
    std::sort(magnitude.begin(), magnitude.begin() + static_cast<std::ptrdiff_t>(k) + 1,
              std::greater<double>());

    double threshold = magnitude[k];
    if (!(threshold > 0.0))
        throw std::invalid_argument("hill threshold is not positive; tail is degenerate");

    double mean_log_excess = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        mean_log_excess += std::log(magnitude[i] / threshold);
    mean_log_excess /= static_cast<double>(k);
    if (!(mean_log_excess > 0.0))
        throw std::invalid_argument("hill estimator degenerated on tied tail values");
    return 1.0 / mean_log_excess;
}

StylizedFactsReport stylized_facts(std::span<const double> returns,
                                   const StylizedFactsOptions& opts) {
    StylizedFactsReport rep;
    rep.n = returns.size();
    rep.max_lag = opts.max_lag;
    rep.tail_fraction = opts.tail_fraction;
    rep.band = 2.0 / std::sqrt(static_cast<double>(returns.size()));

    rep.acf_returns = acf(returns, opts.max_lag);
    std::vector<double> magnitude(returns.size());
    std::transform(returns.begin(), returns.end(), magnitude.begin(),
                   [](double v) { return std::abs(v); });
    rep.acf_abs_returns = acf(magnitude, opts.max_lag);
    rep.excess_kurtosis = excess_kurtosis(returns);

    try {
        rep.hill_exponent = hill_tail_exponent(returns, opts.tail_fraction);
        double halved = hill_tail_exponent(returns, opts.tail_fraction / 2.0);
        rep.hill_unstable = std::abs(halved - *rep.hill_exponent) > 0.5 * *rep.hill_exponent;
    } catch (const std::invalid_argument&) {
        rep.hill_exponent.reset();
        rep.hill_unstable = false;
    }

    std::size_t inside = 0;
    for (double v : rep.acf_returns)
        if (std::abs(v) <= rep.band) ++inside;
    rep.returns_uncorrelated =
        static_cast<double>(inside) >= 0.9 * static_cast<double>(opts.max_lag) - 1e-12;

    rep.volatility_clustering = mean_of(rep.acf_abs_returns) > rep.band;
    rep.fat_tails = rep.excess_kurtosis > 1.0;
    return rep;
}

}  // namespace sentimarket
