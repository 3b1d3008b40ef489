#include "sentimarket/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "sentimarket/nelder_mead.hpp"

namespace sentimarket {

namespace {

struct FreeCoords {
    std::vector<int> index;           // positions of the free coordinates in theta
    std::array<double, 4> pinned{};   // full theta template with pinned values set
};

FreeCoords free_coordinates(const FitOptions& opts, const ModelParams& structural) {
    FreeCoords fc;
    fc.pinned = pack_theta(structural);
    for (int i = 0; i < 4; ++i) {
        if (opts.pinned[static_cast<std::size_t>(i)]) {
            fc.pinned[static_cast<std::size_t>(i)] = *opts.pinned[static_cast<std::size_t>(i)];
        } else {
            fc.index.push_back(i);
        }
    }
    return fc;
}

// Free coordinates come back through exp, which can overshoot a bound by an
// ulp when the log point sits exactly on the log bound; the final clamp keeps
// the value-space contract airtight.
std::array<double, 4> assemble_theta(const FreeCoords& fc, std::span<const double> log_free,
                                     const ParamBounds& bounds) {
    std::array<double, 4> theta = fc.pinned;
    for (std::size_t d = 0; d < fc.index.size(); ++d) {
        auto [lo, hi] = bounds.coord(fc.index[d]);
        theta[static_cast<std::size_t>(fc.index[d])] =
            std::clamp(std::exp(log_free[d]), lo, hi);
    }
    return theta;
}

// Out-of-box points never reach the likelihood; they get a penalty that grows
// with the violation and always ranks worse than any in-box point, including
// collapsed ones at -kLogLikFloor.
double box_penalty(const FreeCoords& fc, std::span<const double> log_free,
                   const ParamBounds& bounds) {
    double violation = 0.0;
    for (std::size_t d = 0; d < fc.index.size(); ++d) {
        auto [lo, hi] = bounds.coord(fc.index[d]);
        double v = log_free[d];
        if (v < std::log(lo)) violation += std::log(lo) - v;
        if (v > std::log(hi)) violation += v - std::log(hi);
    }
    return violation > 0.0 ? -kLogLikFloor * (1.0 + violation) : 0.0;
}

// Heuristic center of the start box when the caller does not provide one.
// The scale parameters come off the sample dispersion of the observed
// returns. The feedback scale is different: alpha divides the running sum of
// returns, so the filtered log-sentiment drifts by roughly sd * sqrt(n) /
// alpha over the sample, and the volatility exponent compares that drift to
// beta. With the beta center at sd/10 the ratio is 10 sqrt(n) / alpha;
// centering alpha at 10 sqrt(n) keeps the implied volatility response of
// order one, where the likelihood is alive and has slope, instead of parking
// every start on the overflow plateau.
std::array<double, 4> default_start_center(std::span<const double> returns,
                                           const ParamBounds& bounds) {
    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());
    double var = 0.0;
    for (double r : returns) var += (r - mean) * (r - mean);
    var /= static_cast<double>(returns.size());
    double sd = std::sqrt(var);
    if (!(sd > 0.0) || !std::isfinite(sd)) sd = 1e-2;

    std::array<double, 4> center{1.0, sd, sd / 10.0,
                                 10.0 * std::sqrt(static_cast<double>(returns.size()))};
    for (int i = 0; i < 4; ++i) {
        auto [lo, hi] = bounds.coord(i);
        center[static_cast<std::size_t>(i)] =
            std::clamp(center[static_cast<std::size_t>(i)], lo, hi);
    }
    return center;
}

struct StartOutcome {
    StartRecord record;
    std::vector<double> log_free;
};

StartOutcome run_one_start(const std::function<double(std::span<const double>)>& negative_loglik,
                           const FreeCoords& fc, const ParamBounds& bounds,
                           std::vector<double> log_start, int budget) {
    StartOutcome outcome;
    outcome.record.initial = assemble_theta(fc, log_start, bounds);

    // Coarse-to-fine restart ladder; each stage reuses the previous optimum.
    constexpr std::array<double, 6> scales{1.0, 0.25, 0.05, 0.01, 2e-3, 5e-4};
    std::vector<double> x = std::move(log_start);
    double f_best = negative_loglik(x);
    int evals = 1;
    for (double scale : scales) {
        if (evals >= budget) break;
        NelderMeadOptions nm;
        nm.max_evaluations = budget - evals;
        NelderMeadResult res = nelder_mead(negative_loglik, x, scale, nm);
        evals += res.evaluations;
        if (res.f < f_best) {
            f_best = res.f;
            x = res.x;
        }
    }
    // Tight polish rounds to squeeze the gradient down; re-inflating the
    // simplex several times recovers directions a previous collapse lost.
    constexpr std::array<double, 4> polish{5e-4, 5e-4, 2e-4, 2e-4};
    for (double scale : polish) {
        if (evals >= budget) break;
        NelderMeadOptions nm;
        nm.max_evaluations = budget - evals;
        NelderMeadResult res = nelder_mead(negative_loglik, x, scale, nm);
        evals += res.evaluations;
        if (res.f < f_best) {
            f_best = res.f;
            x = res.x;
        }
    }

    outcome.record.final = assemble_theta(fc, x, bounds);
    outcome.record.loglik = -f_best;
    outcome.record.evaluations = evals;
    outcome.record.usable = outcome.record.loglik > kLogLikFloor;
    outcome.log_free = std::move(x);
    return outcome;
}

}  // namespace

FitResult maximize_likelihood(std::span<const double> returns, const ModelParams& structural,
                              const FitOptions& opts) {
    structural.validate();
    if (returns.size() < 2)
        throw std::invalid_argument("need at least two observed returns to fit");
    if (opts.starts < 1) throw std::invalid_argument("starts must be at least one");
    for (double r : returns)
        if (!std::isfinite(r)) throw std::invalid_argument("observed returns must be finite");

    FreeCoords fc = free_coordinates(opts, structural);
    if (fc.index.empty()) throw std::invalid_argument("all coordinates are pinned");

    auto negative_loglik = [&, fc](std::span<const double> log_free) {
        double penalty = box_penalty(fc, log_free, opts.bounds);
        if (penalty > 0.0) return penalty;
        ModelParams p = unpack_theta(assemble_theta(fc, log_free, opts.bounds), structural);
        return -log_likelihood(p, returns);
    };

    std::array<double, 4> center =
        opts.start_center ? *opts.start_center : default_start_center(returns, opts.bounds);

    // Draw all starting points up front so the set is independent of how the
    // optimizations are scheduled.
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double spread = opts.start_spread_decades * std::log(10.0);
    std::vector<std::vector<double>> log_starts;
    log_starts.reserve(static_cast<std::size_t>(opts.starts));
    for (int s = 0; s < opts.starts; ++s) {
        std::vector<double> point(fc.index.size());
        for (std::size_t d = 0; d < fc.index.size(); ++d) {
            auto [lo, hi] = opts.bounds.coord(fc.index[d]);
            double c = std::log(center[static_cast<std::size_t>(fc.index[d])]);
            double v = s == 0 ? c : c + spread * (2.0 * unit(rng) - 1.0);
            point[d] = std::clamp(v, std::log(lo), std::log(hi));
        }
        log_starts.push_back(std::move(point));
    }

    unsigned workers = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    std::vector<StartOutcome> outcomes(log_starts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= log_starts.size()) break;
            outcomes[i] = run_one_start(negative_loglik, fc, opts.bounds, log_starts[i],
                                        opts.max_evaluations_per_start);
        }
    };
    if (workers == 1 || log_starts.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(log_starts.size()));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction: rank by final log likelihood, ties by index.
    std::vector<std::size_t> rank(outcomes.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        return outcomes[a].record.loglik > outcomes[b].record.loglik;
    });

    FitResult fit;
    for (const auto& o : outcomes) fit.starts.push_back(o.record);

    const StartOutcome& best = outcomes[rank[0]];
    fit.theta = best.record.final;
    fit.loglik = best.record.loglik;
    fit.params = unpack_theta(fit.theta, structural);

    if (outcomes.size() >= 2 && outcomes[rank[1]].record.usable) {
        fit.start_agreement = best.record.loglik - outcomes[rank[1]].record.loglik;
    } else if (outcomes.size() >= 2) {
        fit.start_agreement = std::numeric_limits<double>::infinity();
    } else {
        fit.start_agreement = 0.0;
    }

    bool gradient_ok = false;
    if (best.record.usable) {
        try {
            std::array<double, 4> grad =
                loglik_gradient_fd(fit.params, returns, opts.grad_rel_step, opts.bounds);
            for (int i = 0; i < 4; ++i)
                if (opts.pinned[static_cast<std::size_t>(i)]) grad[static_cast<std::size_t>(i)] = 0.0;
            fit.gradient = grad;
            // First-order optimality for a box-constrained maximizer: at an
            // active bound the slope may legitimately point out of the box,
            // so only the feasible ascent component counts against the norm.
            double worst = 0.0;
            for (int i = 0; i < 4; ++i) {
                auto idx = static_cast<std::size_t>(i);
                auto [lo, hi] = opts.bounds.coord(i);
                double slope = grad[idx];
                if (fit.theta[idx] >= hi && slope > 0.0) slope = 0.0;
                if (fit.theta[idx] <= lo && slope < 0.0) slope = 0.0;
                worst = std::max(worst, std::abs(slope * fit.theta[idx]));
            }
            fit.gradient_norm = worst;
            gradient_ok = fit.gradient_norm <= opts.tol_grad;
        } catch (const std::exception&) {
            fit.gradient_norm = std::numeric_limits<double>::infinity();
        }
    } else {
        fit.gradient_norm = std::numeric_limits<double>::infinity();
    }

    fit.converged = best.record.usable && gradient_ok && fit.start_agreement <= opts.tol_match;
    return fit;
}

std::vector<ProfilePoint> profile_likelihood(std::span<const double> returns,
                                             const ModelParams& structural, int coordinate,
                                             std::span<const double> grid,
                                             const FitOptions& opts) {
    if (coordinate < 0 || coordinate > 3)
        throw std::invalid_argument("coordinate must identify one of lambda, sigma0, beta, alpha");
    if (opts.pinned[static_cast<std::size_t>(coordinate)])
        throw std::invalid_argument("profiled coordinate cannot also be pinned");

    std::vector<ProfilePoint> profile;
    profile.reserve(grid.size());
    for (double value : grid) {
        FitOptions point_opts = opts;
        point_opts.pinned[static_cast<std::size_t>(coordinate)] = value;
        FitResult fit = maximize_likelihood(returns, structural, point_opts);
        ProfilePoint p;
        p.value = value;
        p.loglik = fit.loglik;
        p.theta = fit.theta;
        p.usable = fit.loglik > kLogLikFloor;
        profile.push_back(p);
    }
    return profile;
}

}  // namespace sentimarket
