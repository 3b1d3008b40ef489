#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sentimarket {

// Sample autocorrelation at lags 1..max_lag, biased normalization (divide by
// n and the full-sample variance, not by n - h). Entry h-1 holds lag h.
// Requires 1 <= max_lag < n and a non-constant series.
std::vector<double> acf(std::span<const double> x, int max_lag);

// Fourth standardized central moment minus 3, using moment estimators.
// Positive values mean tails heavier than Gaussian.
double excess_kurtosis(std::span<const double> x);

// Hill estimator of the tail exponent of |x|. Averages log exceedances of the
// k = floor(tail_fraction * n) largest magnitudes over the (k+1)-th largest,
// which serves as the threshold. Requires n >= 500 and k >= 20, otherwise
// std::invalid_argument; also rejects a non-positive threshold.
double hill_tail_exponent(std::span<const double> x, double tail_fraction = 0.05);

struct StylizedFactsOptions {
    int max_lag = 20;
    double tail_fraction = 0.05;
};

struct StylizedFactsReport {
    std::size_t n = 0;
    int max_lag = 0;
    double tail_fraction = 0.0;
    double band = 0.0;  // half-width 2/sqrt(n) of the white-noise ACF band
    std::vector<double> acf_returns;
    std::vector<double> acf_abs_returns;
    double excess_kurtosis = 0.0;
    std::optional<double> hill_exponent;  // absent when the tail sample is too small
    bool hill_unstable = false;  // halving the tail fraction moved the estimate by >50%

    // Summary flags.
    bool returns_uncorrelated = false;   // >=90% of return ACF lags inside +-band
    bool volatility_clustering = false;  // mean |r| ACF above the band
    bool fat_tails = false;              // excess kurtosis above 1
};

StylizedFactsReport stylized_facts(std::span<const double> returns,
                                   const StylizedFactsOptions& opts = {});

}  // namespace sentimarket
