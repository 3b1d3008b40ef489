#pragma once

#include <span>

#include "sentimarket/transitions.hpp"

namespace sentimarket {

// Expected bullishness after one round of group meetings:
//
//   B' = sum_k a_k sum_j m[k][j] C(k,j) B^j (1-B)^(k-j)
//
// where a_k are the group-size weights and m the current transition
// probabilities. `weights` must have m.max_group_size() entries. The result
// lands in [0, 1] for any B in [0, 1] because every inner sum is a mean of
// probabilities under a binomial distribution.
double sentiment_step(double bullishness, const TransitionState& m,
                      std::span<const double> weights);

// Relative sentiment change RB = (B_now - B_prev) / B_prev. The previous
// value must sit above kBullishnessFloor; below it the state counts as
// collapsed and std::domain_error is thrown.
double bullishness_return(double bullishness_now, double bullishness_prev);

// sigma = sigma0 * exp(|sentiment_return| / beta). Monotone in the magnitude
// of the sentiment move and never below sigma0. Overflows to +inf for large
// moves rather than throwing.
double conditional_volatility(double sentiment_return, double sigma0, double beta);

}  // namespace sentimarket
