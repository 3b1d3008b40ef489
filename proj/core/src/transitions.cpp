#include "sentimarket/transitions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sentimarket {

namespace {

// Largest k for which every C(k, j) fits in 64 bits.
constexpr int kMaxExactK = 67;

const std::vector<std::vector<std::uint64_t>>& pascal_triangle() {
    static const std::vector<std::vector<std::uint64_t>> table = [] {
        std::vector<std::vector<std::uint64_t>> t(kMaxExactK + 1);
        for (int k = 0; k <= kMaxExactK; ++k) {
            t[k].resize(static_cast<std::size_t>(k) + 1);
            t[k][0] = 1;
            t[k][static_cast<std::size_t>(k)] = 1;
            for (int j = 1; j < k; ++j)
                t[k][static_cast<std::size_t>(j)] =
                    t[k - 1][static_cast<std::size_t>(j) - 1] + t[k - 1][static_cast<std::size_t>(j)];
        }
        return t;
    }();
    return table;
}

// Multiplicative value updates drift away from the log-space truth by one ulp
// per step at worst; refresh from the logs often enough that the accumulated
// error stays far below anything the dynamics can see.
constexpr int kRefreshInterval = 256;

}  // namespace

std::uint64_t binomial_coefficient(int k, int j) {
    if (k < 0 || j < 0 || j > k)
        throw std::domain_error("binomial_coefficient requires 0 <= j <= k");
    if (k > kMaxExactK)
        throw std::domain_error("binomial_coefficient overflows 64 bits for k > 67");
    return pascal_triangle()[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
}

double log_binomial_coefficient(int k, int j) {
    if (k < 0 || j < 0 || j > k)
        throw std::domain_error("log_binomial_coefficient requires 0 <= j <= k");
    return std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
}

std::size_t TransitionState::entry_count(int max_group_size) {
    auto l = static_cast<std::size_t>(max_group_size);
    return l * (l + 3) / 2;
}

std::size_t TransitionState::entry_index(int k, int j) {
    auto kk = static_cast<std::size_t>(k);
    return (kk - 1) * (kk + 2) / 2 + static_cast<std::size_t>(j);
}

TransitionState::TransitionState(int max_group_size) : max_group_size_(max_group_size) {
    if (max_group_size < 1)
        throw std::invalid_argument("max_group_size must be positive");
    log_m_.reserve(entry_count(max_group_size));
    m_.reserve(entry_count(max_group_size));
    for (int k = 1; k <= max_group_size; ++k) {
        for (int j = 0; j <= k; ++j) {
            double m = static_cast<double>(j) / static_cast<double>(k);
            m_.push_back(m);
            log_m_.push_back(std::log(m));  // log(0) = -inf for j = 0
        }
    }
}

double TransitionState::value(int k, int j) const {
    if (k < 1 || k > max_group_size_ || j < 0 || j > k)
        throw std::out_of_range("transition entry (" + std::to_string(k) + ", " +
                                std::to_string(j) + ") out of range");
    return m_[entry_index(k, j)];
}

double TransitionState::log_value(int k, int j) const {
    if (k < 1 || k > max_group_size_ || j < 0 || j > k)
        throw std::out_of_range("transition entry (" + std::to_string(k) + ", " +
                                std::to_string(j) + ") out of range");
    return log_m_[entry_index(k, j)];
}

void TransitionState::update(double market_return, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("alpha must be positive");
    double delta = market_return / alpha;
    if (std::isnan(delta))
        throw std::invalid_argument("market_return must not be NaN");

    double factor = std::exp(delta);
    std::size_t n = log_m_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double& lm = log_m_[i];
        if (lm == -std::numeric_limits<double>::infinity()) continue;  // hard zero is absorbing
        lm += delta;
        if (lm >= 0.0) {
            lm = 0.0;
            m_[i] = 1.0;
        } else {
            m_[i] *= factor;
        }
    }

    if (++updates_since_refresh_ >= kRefreshInterval) refresh_values();
}

void TransitionState::refresh_values() {
    for (std::size_t i = 0; i < log_m_.size(); ++i) m_[i] = std::exp(log_m_[i]);
    updates_since_refresh_ = 0;
}

TransitionState neutral_transitions(int max_group_size) {
    return TransitionState(max_group_size);
}

TransitionState transition_update(const TransitionState& m, double market_return, double alpha) {
    TransitionState out = m;
    out.update(market_return, alpha);
    return out;
}

}  // namespace sentimarket
