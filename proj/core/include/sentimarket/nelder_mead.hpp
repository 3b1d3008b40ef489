#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sentimarket {

struct NelderMeadOptions {
    int max_evaluations = 40000;
    double f_tol = 1e-11;  // value spread across the simplex
    double x_tol = 1e-9;   // coordinate diameter of the simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Plain downhill simplex minimizer. The initial simplex is x0 plus
// initial_scale along every axis, so callers pick the geometry by choosing
// the space x lives in (here: log parameters).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, double initial_scale,
                             const NelderMeadOptions& opts = {});

}  // namespace sentimarket
