#pragma once

#include <array>
#include <vector>

namespace sentimarket {

// Bullishness values below this floor are treated as a collapsed sentiment
// state: the relative change (B(t) - B(t-1)) / B(t-1) is no longer reliable.
inline constexpr double kBullishnessFloor = 1e-10;

// Sensitivity of the transition-probability feedback, m <- m * exp(r / alpha).
// The usable range is narrow: below ~3000 the cumulative drift of log m feeds
// |RB| past the point where sigma0 * exp(|RB|/beta) overflows and the path
// dies inside 10^4 steps, while far above it the feedback is too weak to
// produce volatility clustering at all. 4000 keeps ~97% of 10^4-step paths
// alive with clustering still visible; docs/alpha_sweep.md has the sweep.
inline constexpr double kDefaultAlpha = 4000.0;

struct ModelParams {
    double lambda = 1.1;               // return response to sentiment changes, r = RB/lambda + eta
    double sigma0 = 0.01;              // baseline volatility of the news term
    double beta = 0.001;               // scale of |RB| in the volatility response
    double alpha = kDefaultAlpha;      // return scale in the transition update
    int max_group_size = 5;            // L, largest communicating group
    std::vector<double> group_weights; // a_1..a_L; empty selects the uniform 1/L profile
    double initial_bullishness = 0.5;  // B(0)

    // Weights actually used by the dynamics: the explicit profile if given,
    // otherwise uniform. Always has max_group_size entries summing to one.
    std::vector<double> effective_weights() const;

    // Throws std::invalid_argument on any violated constraint (non-positive
    // scales, weight profile of the wrong length or not summing to one, B(0)
    // outside (0, 1)).
    void validate() const;
};

// Box constraints for the estimable coordinates (lambda, sigma0, beta, alpha).
// The alpha interval is wide on purpose: usable values sit in the thousands
// while the degenerate saturating regime lives near zero.
struct ParamBounds {
    std::array<double, 2> lambda{1e-3, 1e3};
    std::array<double, 2> sigma0{1e-6, 1.0};
    std::array<double, 2> beta{1e-6, 1.0};
    std::array<double, 2> alpha{1e-4, 1e5};

    std::array<double, 2> coord(int i) const;
    bool contains(const std::array<double, 4>& theta) const;
};

// Order of the estimable coordinates wherever they travel as a flat array.
enum ParamIndex : int { kLambda = 0, kSigma0 = 1, kBeta = 2, kAlpha = 3 };

inline constexpr std::array<const char*, 4> kParamNames{"lambda", "sigma0", "beta", "alpha"};

std::array<double, 4> pack_theta(const ModelParams& p);
ModelParams unpack_theta(const std::array<double, 4>& theta, const ModelParams& structural);

}  // namespace sentimarket
