#ifndef CONVBOUNDS_APPROX_HPP
#define CONVBOUNDS_APPROX_HPP

#include <cstddef>
#include <vector>

#include "convbounds/measure.hpp"

namespace convbounds {

/**
 * The convolution factors F_1..F_n together with the reference distribution
 * G whose n-th power (plus correction terms) approximates F_1 * ... * F_n.
 *
 * Invariants checked on construction: n >= 1, every factor and G are
 * probability measures within 1e-12 and all share one dimension.
 */
class ExpansionInput {
public:
    /// G defaults to the arithmetic mean of the factors.
    explicit ExpansionInput(std::vector<SignedMeasure> factors);
    ExpansionInput(std::vector<SignedMeasure> factors, SignedMeasure reference);

    std::size_t n() const noexcept { return factors_.size(); }
    std::size_t dimension() const noexcept { return reference_.dimension(); }
    const std::vector<SignedMeasure>& factors() const noexcept { return factors_; }
    const SignedMeasure& factor(std::size_t j) const { return factors_.at(j); }
    const SignedMeasure& reference() const noexcept { return reference_; }
    const SignedMeasure& mean() const noexcept { return mean_; }
    /// True when G was taken to be the mean of the factors.
    bool mean_centered() const noexcept { return mean_centered_; }

private:
    std::vector<SignedMeasure> factors_;
    SignedMeasure reference_;
    SignedMeasure mean_;
    bool mean_centered_;
};

/// Arithmetic mean n^-1 sum F_j.
SignedMeasure mean_measure(const std::vector<SignedMeasure>& factors);

/// Gamma_k = sum_j (G - F_j)^k, k >= 1.
SignedMeasure gamma_k(const ExpansionInput& input, std::size_t k);

/// Default cap on the recursion depth: min(n, 16).
std::size_t default_k_max(const ExpansionInput& input);

/// V_0..V_{k_max} by the Newton-identity recursion
/// V_k = -(1/k) sum_{j<k} V_j Gamma_{k-j}.
std::vector<SignedMeasure> v_k_recursive(const ExpansionInput& input, std::size_t k_max);

/// V_k as the elementary symmetric sum over all k-subsets of (F_j - G).
/// Only admitted for n <= 20.
SignedMeasure v_k_bruteforce(const ExpansionInput& input, std::size_t k);

/// Elementary symmetric sum of order k over arbitrary signed measures.
SignedMeasure elementary_symmetric(const std::vector<SignedMeasure>& terms, std::size_t k);

/// W_ell = sum_{k<=ell} V_k G^{n-k}.
SignedMeasure w_ell(const ExpansionInput& input, std::size_t ell);

/// F_1 * ... * F_n by a left fold in input order.
SignedMeasure exact_product(const std::vector<SignedMeasure>& factors);

/// ||F_1 * ... * F_n - W_ell||.
double exact_distance(const ExpansionInput& input, std::size_t ell);

}  // namespace convbounds

#endif  // CONVBOUNDS_APPROX_HPP
