#include "sentimarket/filter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sentimarket/dynamics.hpp"
#include "sentimarket/errors.hpp"
#include "sentimarket/transitions.hpp"

namespace sentimarket {

namespace {
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // 0.5 * ln(2*pi)
}

FilterOutput filter(const ModelParams& params, std::span<const double> returns) {
    params.validate();
    for (std::size_t i = 0; i < returns.size(); ++i)
        if (!std::isfinite(returns[i]))
            throw std::invalid_argument("observed return at step " + std::to_string(i + 1) +
                                        " is not finite");

    std::vector<double> weights = params.effective_weights();
    TransitionState m = neutral_transitions(params.max_group_size);

    FilterOutput out;
    out.bullishness.reserve(returns.size());
    out.sentiment_return.reserve(returns.size());
    out.volatility.reserve(returns.size());
    out.loglik_terms.reserve(returns.size());

    double b_prev = params.initial_bullishness;
    for (std::size_t t = 1; t <= returns.size(); ++t) {
        if (b_prev < kBullishnessFloor)
            throw SentimentCollapse("implied sentiment collapsed at step " + std::to_string(t), t);

        double b = sentiment_step(b_prev, m, weights);
        double rb = bullishness_return(b, b_prev);
        double sigma = conditional_volatility(rb, params.sigma0, params.beta);
        double r_obs = returns[t - 1];
        double z = (r_obs - rb / params.lambda) / sigma;
        double term = -kHalfLogTwoPi - std::log(sigma) - 0.5 * z * z;
        m.update(r_obs, params.alpha);

        out.bullishness.push_back(b);
        out.sentiment_return.push_back(rb);
        out.volatility.push_back(sigma);
        out.loglik_terms.push_back(term);
        out.loglik += term;

        b_prev = b;
    }
    return out;
}

double log_likelihood(const ModelParams& params, std::span<const double> returns,
                      LogLikDiagnostic* diag) {
    if (diag) *diag = LogLikDiagnostic{};
    try {
        FilterOutput out = filter(params, returns);
        if (!std::isfinite(out.loglik)) {
            if (diag) diag->non_finite = true;
            return kLogLikFloor;
        }
        return out.loglik;
    } catch (const SentimentCollapse& e) {
        if (diag) {
            diag->collapsed = true;
            diag->collapse_step = e.step();
        }
        return kLogLikFloor;
    }
}

std::array<double, 4> loglik_gradient_fd(const ModelParams& params,
                                         std::span<const double> returns, double rel_step,
                                         const ParamBounds& bounds) {
    if (!(rel_step > 0.0)) throw std::invalid_argument("rel_step must be positive");
    params.validate();

    std::array<double, 4> theta = pack_theta(params);
    auto probe_value = [&](double xi, int moved) {
        std::array<double, 4> point = theta;
        point[static_cast<std::size_t>(moved)] = xi;
        return log_likelihood(unpack_theta(point, params), returns);
    };
    auto throw_degenerate = [](int moved, double near) {
        throw std::runtime_error(std::string("likelihood is not finite when probing ") +
                                 kParamNames[static_cast<std::size_t>(moved)] + " near " +
                                 std::to_string(near));
    };

    // An optimum can sit right next to the region where the likelihood
    // degenerates (volatility overflow, sentiment collapse). When a probe
    // lands there, pull it closer until it is back on finite ground instead
    // of giving up.
    std::array<double, 4> grad{};
    for (int i = 0; i < 4; ++i) {
        auto [lo, hi] = bounds.coord(i);
        double x = theta[static_cast<std::size_t>(i)];
        double h = rel_step * std::abs(x);
        if (h == 0.0) h = rel_step;
        double h_up = std::min(h, hi - x);
        double h_down = std::min(h, x - lo);

        double g;
        if (h_up > 0.0 && h_down > 0.0) {
            double hs = std::min(h_up, h_down);
            double f_plus, f_minus;
            for (int attempt = 0;; ++attempt) {
                f_plus = probe_value(x + hs, i);
                f_minus = probe_value(x - hs, i);
                if (f_plus > kLogLikFloor && f_minus > kLogLikFloor) break;
                if (attempt >= 40) throw_degenerate(i, x);
                hs *= 0.5;
            }
            g = (f_plus - f_minus) / (2.0 * hs);
        } else if (h_up > 0.0 || h_down > 0.0) {
            double f0 = probe_value(x, i);
            if (!(f0 > kLogLikFloor)) throw_degenerate(i, x);
            double sign = h_up > 0.0 ? 1.0 : -1.0;
            double hs = h_up > 0.0 ? h_up : h_down;
            double f_side;
            for (int attempt = 0;; ++attempt) {
                f_side = probe_value(x + sign * hs, i);
                if (f_side > kLogLikFloor) break;
                if (attempt >= 40) throw_degenerate(i, x);
                hs *= 0.5;
            }
            g = sign * (f_side - f0) / hs;
        } else {
            throw std::invalid_argument(std::string("bounds for ") +
                                        kParamNames[static_cast<std::size_t>(i)] +
                                        " leave no room to probe");
        }
        grad[static_cast<std::size_t>(i)] = g;
    }
    return grad;
}

double scaled_gradient_inf_norm(const std::array<double, 4>& gradient,
                                const std::array<double, 4>& theta) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(gradient[i] * theta[i]));
    return worst;
}

}  // namespace sentimarket
