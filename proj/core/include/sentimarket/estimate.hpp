#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sentimarket/filter.hpp"
#include "sentimarket/params.hpp"

namespace sentimarket {

struct StartRecord {
    std::array<double, 4> initial{};
    std::array<double, 4> final{};
    double loglik = kLogLikFloor;
    int evaluations = 0;
    bool usable = false;  // finished on a finite likelihood
};

struct FitResult {
    ModelParams params;             // structural settings with the fitted coordinates filled in
    std::array<double, 4> theta{};  // (lambda, sigma0, beta, alpha) at the optimum
    double loglik = kLogLikFloor;
    std::array<double, 4> gradient{};  // natural-units gradient at the optimum
    // Scaled infinity norm max_i |theta_i * g_i| over the feasible ascent
    // directions: slopes pointing out of the box at an active bound are
    // excluded, so a boundary maximizer can report a small norm.
    double gradient_norm = 0.0;
    double start_agreement = 0.0;      // gap between the two best final log likelihoods
    bool converged = false;
    std::vector<StartRecord> starts;
};

struct FitOptions {
    int starts = 5;
    std::uint64_t seed = 1;
    ParamBounds bounds{};
    // Starting points are log-uniform in a box of +-start_spread_decades
    // around the start center (data-driven unless given), clipped to bounds.
    double start_spread_decades = 1.0;
    std::optional<std::array<double, 4>> start_center;
    double tol_grad = 1e-3;   // convergence: scaled gradient infinity norm
    double tol_match = 1e-4;  // convergence: best-two log likelihood agreement
    double grad_rel_step = 1e-5;
    int max_evaluations_per_start = 20000;
    unsigned threads = 0;  // 0 = hardware concurrency
    // Pin a coordinate to a fixed value and optimize over the rest. This is
    // what profile_likelihood drives.
    std::array<std::optional<double>, 4> pinned{};
};

// Multi-start Nelder-Mead in log-parameter space over the conditional log
// likelihood. Starts run in parallel; the sequence of starting points and the
// reduction are deterministic for a fixed seed, so the result does not depend
// on thread scheduling.
FitResult maximize_likelihood(std::span<const double> returns, const ModelParams& structural,
                              const FitOptions& opts = {});

struct ProfilePoint {
    double value = 0.0;   // pinned coordinate
    double loglik = kLogLikFloor;
    std::array<double, 4> theta{};  // optimum of the remaining coordinates
    bool usable = false;
};

// Profile of the maximized log likelihood along one coordinate: for every
// grid value, re-optimizes the other three coordinates.
std::vector<ProfilePoint> profile_likelihood(std::span<const double> returns,
                                             const ModelParams& structural, int coordinate,
                                             std::span<const double> grid,
                                             const FitOptions& opts = {});

}  // namespace sentimarket
