#include "sentimarket/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sentimarket {

std::vector<double> ModelParams::effective_weights() const {
    if (!group_weights.empty()) return group_weights;
    if (max_group_size <= 0) throw std::invalid_argument("max_group_size must be positive");
    return std::vector<double>(static_cast<std::size_t>(max_group_size),
                               1.0 / static_cast<double>(max_group_size));
}

void ModelParams::validate() const {
    auto require_positive_finite = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be positive and finite");
    };
    require_positive_finite(lambda, "lambda");
    require_positive_finite(sigma0, "sigma0");
    require_positive_finite(beta, "beta");
    require_positive_finite(alpha, "alpha");

    if (max_group_size < 1 || max_group_size > 60)
        throw std::invalid_argument("max_group_size must be in [1, 60]");

    if (!group_weights.empty()) {
        if (group_weights.size() != static_cast<std::size_t>(max_group_size))
            throw std::invalid_argument("group_weights must have max_group_size entries");
        double sum = 0.0;
        for (double w : group_weights) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("group_weights entries must be finite and non-negative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("group_weights must sum to one");
    }

    if (!(initial_bullishness > 0.0) || !(initial_bullishness < 1.0))
        throw std::invalid_argument("initial_bullishness must lie strictly inside (0, 1)");
}

std::array<double, 2> ParamBounds::coord(int i) const {
    switch (i) {
        case kLambda: return lambda;
        case kSigma0: return sigma0;
        case kBeta: return beta;
        case kAlpha: return alpha;
        default: throw std::out_of_range("parameter index must be 0..3");
    }
}

bool ParamBounds::contains(const std::array<double, 4>& theta) const {
    for (int i = 0; i < 4; ++i) {
        auto [lo, hi] = coord(i);
        if (!(theta[static_cast<std::size_t>(i)] >= lo) ||
            !(theta[static_cast<std::size_t>(i)] <= hi))
            return false;
    }
    return true;
}

std::array<double, 4> pack_theta(const ModelParams& p) {
    return {p.lambda, p.sigma0, p.beta, p.alpha};
}

ModelParams unpack_theta(const std::array<double, 4>& theta, const ModelParams& structural) {
    ModelParams p = structural;
    p.lambda = theta[kLambda];
    p.sigma0 = theta[kSigma0];
    p.beta = theta[kBeta];
    p.alpha = theta[kAlpha];
    return p;
}

}  // namespace sentimarket
