#ifndef CONVBOUNDS_BOUNDS_HPP
#define CONVBOUNDS_BOUNDS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convbounds/constants.hpp"
#include "convbounds/family.hpp"
#include "convbounds/measure.hpp"

namespace convbounds {

/// A named bound: a value, or the reason it does not apply.
struct BoundResult {
    std::string name;
    std::optional<double> value;
    std::string reason;  ///< empty when applicable
    std::vector<std::pair<std::string, double>> conditions;

    bool applicable() const noexcept { return value.has_value(); }
    /// Applicable but no better than the trivial bound 2.
    bool trivial() const noexcept { return value && *value > 2.0; }

    static BoundResult of(std::string name, double v);
    static BoundResult not_applicable(std::string name, std::string reason);
};

/// Expansion bound for general alpha; needs eta_ell < 1/(2ec1).
BoundResult thm1_bound(double eta_ell, double eta_ell_alpha, std::size_t ell, double alpha);
/// alpha = 0 closed form.
BoundResult thm1_bound_alpha0(double eta_ell, std::size_t ell);

/// u_ell eta_0^((ell+1)/2), or utilde_ell eta_1^((ell+1)/2) when mean centred.
BoundResult thm2_bound(double eta, std::size_t ell, bool mean_centered,
                       ConstantMode mode = ConstantMode::published);

/// (1 + utilde_2 sqrt(eta1)) eta1 for ||prod F_j - mean^n||.
BoundResult chain_w1(double eta1, ConstantMode mode = ConstantMode::published);
/// (sqrt 3 + utilde_3 sqrt(eta1)) eta1^(3/2) for ||prod F_j - W_2||.
BoundResult chain_w2(double eta1, ConstantMode mode = ConstantMode::published);
/// (2 + utilde_4 sqrt(eta1)) eta1^2 for ||prod F_j - W_3||.
BoundResult chain_w3(double eta1, ConstantMode mode = ConstantMode::published);

struct EhmBounds {
    double lower;
    double upper;
};

/// Two-sided estimate for Bernoulli convolutions (d = 1).
EhmBounds ehm_bounds(const CategoricalFamily& fam);

struct LohConstants {
    double c1;
    double c2;
};

LohConstants loh_constants(const CategoricalFamily& fam);
BoundResult loh_bound(const CategoricalFamily& fam);

struct RoosBounds {
    BoundResult sqrt_sum;
    BoundResult sqrt_sum_refined;
    BoundResult magic;
    BoundResult magic_improved;
};

/// e / (2 - sqrt 3).
double roos_c3();
RoosBounds roos_bounds(const CategoricalFamily& fam, ConstantMode mode = ConstantMode::published);

/// Outcome of the inequalities for zero-sum families L_1..L_n.
struct ZeroSumRecord {
    std::array<double, 6> lhs{};  ///< ||Vtilde_k||, k = 2..7
    std::array<double, 6> rhs{};
    double theta2 = 0.0, theta3 = 0.0, theta6 = 0.0;
    double aux = 0.0;  ///< (theta3^2 - theta6) / theta2^3, 0 when theta2 = 0
    bool ok = true;
};

/// Requires ||sum L_j|| < 1e-10; checks with slack `tol`.
ZeroSumRecord zero_sum_check(const std::vector<SignedMeasure>& ls, double tol = 1e-12);

}  // namespace convbounds

#endif  // CONVBOUNDS_BOUNDS_HPP
