#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sentimarket/params.hpp"

namespace sentimarket {

// Deterministic reconstruction of the latent sentiment state from an observed
// return series. Vectors are aligned with the input: entry t-1 describes step t.
struct FilterOutput {
    std::vector<double> bullishness;       // B implied by the communication dynamics
    std::vector<double> sentiment_return;  // RB
    std::vector<double> volatility;        // sigma conditional on the path so far
    std::vector<double> loglik_terms;      // per-step Gaussian log density of r
    double loglik = 0.0;                   // sum of the terms
};

// Runs the sentiment recursion forward, scoring each observed return against
// the one-step-ahead Gaussian N(RB(t)/lambda, sigma(t)^2) and feeding the
// observed return back into the transition probabilities.
//
// Throws std::invalid_argument on a non-finite observation and
// SentimentCollapse if the implied bullishness hits the floor.
FilterOutput filter(const ModelParams& params, std::span<const double> returns);

// Sentinel standing in for log L = -inf when a parameter point is unusable
// (collapsed sentiment path or overflowed volatility). Finite so that
// optimizers can still rank such points against each other.
inline constexpr double kLogLikFloor = -1e300;

struct LogLikDiagnostic {
    bool collapsed = false;
    std::size_t collapse_step = 0;  // 1-based, set when collapsed
    bool non_finite = false;        // likelihood overflowed or degenerated
};

// Total conditional log likelihood of the returns under the model. Failure
// modes never escape as exceptions here: they come back as kLogLikFloor (plus
// details in *diag when given), so the function is safe to call inside an
// optimizer on arbitrary in-bounds parameters.
double log_likelihood(const ModelParams& params, std::span<const double> returns,
                      LogLikDiagnostic* diag = nullptr);

// Central-difference gradient of log_likelihood in (lambda, sigma0, beta,
// alpha). Steps are rel_step * theta_i, shrunk where needed so probes stay
// inside `bounds`; at a pinned bound the difference turns one-sided. A
// non-finite likelihood at a probe point throws std::runtime_error naming the
// offending parameter.
std::array<double, 4> loglik_gradient_fd(const ModelParams& params,
                                         std::span<const double> returns,
                                         double rel_step = 1e-5,
                                         const ParamBounds& bounds = {});

// Infinity norm of the gradient in normalized units, max_i |theta_i * g_i|.
// This is the gradient with respect to log parameters, which makes one number
// comparable across coordinates of very different magnitude.
double scaled_gradient_inf_norm(const std::array<double, 4>& gradient,
                                const std::array<double, 4>& theta);

}  // namespace sentimarket
