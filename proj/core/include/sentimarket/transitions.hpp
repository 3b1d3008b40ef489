#pragma once

#include <cstdint>
#include <vector>

namespace sentimarket {

// Exact C(k, j) in 64-bit integer arithmetic. Valid for 0 <= j <= k <= 67,
// the largest k whose full row fits in 64 bits; throws std::domain_error
// outside that range.
std::uint64_t binomial_coefficient(int k, int j);

// log C(k, j) through lgamma, for sizes where the exact version would overflow.
double log_binomial_coefficient(int k, int j);

// Transition probabilities m[k][j] of a group of k agents turning its members
// bullish when j of them already are, for every group size k = 1..L. The
// entries evolve multiplicatively with realized returns, so they are kept in
// log space: log m accumulates r/alpha increments exactly, -inf encodes a hard
// zero (j = 0 stays absorbing), and 0 encodes the saturated value m = 1.
class TransitionState {
public:
    // Majority-rule start: m[k][j] = j / k.
    explicit TransitionState(int max_group_size);

    int max_group_size() const noexcept { return max_group_size_; }

    double value(int k, int j) const;      // m[k][j]
    double log_value(int k, int j) const;  // log m[k][j]

    // m[k][j] <- min(1, m[k][j] * exp(market_return / alpha)) for every entry.
    // Hard zeros are untouched even when the increment is +inf (a non-finite
    // positive return), which keeps 0 * inf out of the state.
    void update(double market_return, double alpha);

    // Flat views over all entries, ordered k = 1..L with j = 0..k inside each
    // block. Handy for the dynamics kernel and for tests.
    const std::vector<double>& values() const noexcept { return m_; }
    const std::vector<double>& log_values() const noexcept { return log_m_; }

    static std::size_t entry_count(int max_group_size);
    static std::size_t entry_index(int k, int j);

    bool operator==(const TransitionState&) const = default;

private:
    int max_group_size_ = 0;
    std::vector<double> log_m_;
    std::vector<double> m_;
    int updates_since_refresh_ = 0;

    void refresh_values();
};

// Spelled-out constructor for the neutral initial condition m[k][j] = j / k.
TransitionState neutral_transitions(int max_group_size);

// Value-semantics form of TransitionState::update.
TransitionState transition_update(const TransitionState& m, double market_return, double alpha);

}  // namespace sentimarket
