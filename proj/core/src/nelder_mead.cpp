#include "sentimarket/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sentimarket {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, double initial_scale,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead needs at least one coordinate");
    if (!(initial_scale > 0.0)) throw std::invalid_argument("initial_scale must be positive");

    std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_scale;

    std::vector<double> fvals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return objective(x);
    };
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), candidate(n);

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    };

    NelderMeadResult result;
    while (true) {
        sort_simplex();
        std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        double spread = fvals[worst] - fvals[best];
        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                diameter = std::max(diameter, std::abs(simplex[order[i]][d] - simplex[best][d]));
        if ((spread <= opts.f_tol && diameter <= opts.x_tol) || evals >= opts.max_evaluations) {
            result.x = simplex[best];
            result.f = fvals[best];
            result.evaluations = evals;
            result.converged = spread <= opts.f_tol && diameter <= opts.x_tol;
            return result;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (std::size_t d = 0; d < n; ++d) centroid[d] /= static_cast<double>(n);

        auto move = [&](double coeff) {
            for (std::size_t d = 0; d < n; ++d)
                candidate[d] = centroid[d] + coeff * (simplex[worst][d] - centroid[d]);
        };

        move(-kReflect);
        double f_reflect = eval(candidate);

        if (f_reflect < fvals[best]) {
            std::vector<double> reflected = candidate;
            move(-kExpand);
            double f_expand = eval(candidate);
            if (f_expand < f_reflect) {
                simplex[worst] = candidate;
                fvals[worst] = f_expand;
            } else {
                simplex[worst] = std::move(reflected);
                fvals[worst] = f_reflect;
            }
        } else if (f_reflect < fvals[second_worst]) {
            simplex[worst] = candidate;
            fvals[worst] = f_reflect;
        } else {
            bool outside = f_reflect < fvals[worst];
            move(outside ? -kContract : kContract);
            double f_contract = eval(candidate);
            double limit = outside ? f_reflect : fvals[worst];
            if (f_contract < limit) {
                simplex[worst] = candidate;
                fvals[worst] = f_contract;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        simplex[i][d] = simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
                    fvals[i] = eval(simplex[i]);
                }
            }
        }
    }
}

}  // namespace sentimarket
