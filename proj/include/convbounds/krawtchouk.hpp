#ifndef CONVBOUNDS_KRAWTCHOUK_HPP
#define CONVBOUNDS_KRAWTCHOUK_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "convbounds/measure.hpp"

namespace convbounds {

/// Integer vector with the componentwise order. Entries of a multi-index
/// proper are nonnegative; lattice arguments of difference operators may
/// go negative.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}
    MultiIndex(std::initializer_list<int> e) : entries(e) {}
    static MultiIndex zero(std::size_t d) { return MultiIndex(std::vector<int>(d, 0)); }

    std::size_t size() const noexcept { return entries.size(); }
    int operator[](std::size_t r) const { return entries[r]; }
    int& operator[](std::size_t r) { return entries[r]; }
    int order() const noexcept;
    bool nonnegative() const noexcept;
    /// prod_r entries[r]!, as a double.
    double factorial() const;
    bool leq(const MultiIndex& other) const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

std::string to_string(const MultiIndex& v);

/// All v in Z_+^d with |v| = k, in lexicographic order.
std::vector<MultiIndex> indices_of_order(std::size_t d, int k);
/// All v in Z_+^d with |v| <= k.
std::vector<MultiIndex> indices_up_to(std::size_t d, int k);
/// All u with 0 <= u <= v.
std::vector<MultiIndex> indices_below(const MultiIndex& v);

/// Success probabilities p_1..p_d; p_0 = 1 - sum p_r.
struct MultinomialParams {
    std::vector<double> p;

    MultinomialParams() = default;
    /// Requires p_r in (0,1) and sum p_r < 1.
    explicit MultinomialParams(std::vector<double> probs);
    std::size_t d() const noexcept { return p.size(); }
    double p0() const noexcept;
    /// p^v = prod_r p_r^{v_r}.
    double pow(const MultiIndex& v) const;
};

/// C(a, b) = prod_{m=1..b} (a - m + 1) / m for real a and integer b >= 0;
/// 0 for b < 0.
double generalized_binomial(double a, int b);

/// Multinomial counting density at w with n trials; 0 off the simplex.
double multinomial_pmf(const MultiIndex& w, int n, const MultinomialParams& params);
/// Same, by direct products; for n <= 30.
double multinomial_pmf_direct(const MultiIndex& w, int n, const MultinomialParams& params);

/// Krawtchouk polynomial Kr(v; w, n, p).
double krawtchouk_poly(const MultiIndex& v, const MultiIndex& w, int n, const MultinomialParams& params);

using LatticeFunction = std::function<double(const MultiIndex&)>;

/// (Delta_r f)(w) = f(w - e_r) - f(w); r is 0-based.
LatticeFunction delta_r(std::size_t r, LatticeFunction f);
/// Delta^v f as a composition of single differences.
LatticeFunction delta_composed(const MultiIndex& v, LatticeFunction f);
/// Delta^v f(w) = sum_{u <= v} (-1)^{|v-u|} C(v,u) f(w - u).
LatticeFunction delta_operator(const MultiIndex& v, LatticeFunction f);

/// Right-hand side of the bi-orthogonality identity for |v| = |vt|.
double kr_pairing_closed_form(const MultiIndex& v, const MultiIndex& vt, int n, const MultinomialParams& params);
/// Left-hand side: sum_w pmf(w, n+|v|) Kr(v; w, n+|v|) Kr(vt; w, n+|v|).
double kr_pairing_sum(const MultiIndex& v, const MultiIndex& vt, int n, const MultinomialParams& params);

/// Right-hand side of the difference identity Delta^v pmf(w, n) = ... .
double delta_pmf_via_krawtchouk(const MultiIndex& v, const MultiIndex& w, int n, const MultinomialParams& params);

/// A finitely supported random vector in R^d.
struct FiniteRandomVector {
    std::vector<std::pair<std::vector<double>, double>> support;

    std::size_t d() const { return support.empty() ? 0 : support.front().first.size(); }
    /// Requires probabilities summing to 1 within 1e-12.
    void validate() const;
};

struct VerificationRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 1e-10;
    bool ok = true;
    std::string detail;
};

/// H_0..H_d together: sum_w Delta^v pmf(w,n) H^w H_0^{n+|v|-|w|} against
/// G^n prod (H_r - H_0)^{v_r}. lhs = max atom difference, rhs = 0.
VerificationRecord check_delta_expansion(const MultiIndex& v, const std::vector<SignedMeasure>& atoms,
                            const MultinomialParams& params, int n);

/// ||U_1 G^n|| against the coefficient bound; a maps each |v| = k to a_v.
VerificationRecord check_coefficient_smoothing(const std::map<MultiIndex, double>& a, const std::vector<SignedMeasure>& atoms,
                              const MultinomialParams& params, int n);

/// ||U_2 G^n|| against the expectation bound with an independent copy of X.
VerificationRecord check_expectation_smoothing(const FiniteRandomVector& x, const std::vector<SignedMeasure>& atoms,
                             const MultinomialParams& params, int n, int k);

/// ||U^k G^n|| <= C(n+k,k)^{-1/2} (int f^2 dG)^{k/2}.
VerificationRecord check_power_smoothing(const SignedMeasure& u, const SignedMeasure& g, int n, int k);

/// Shifted version for U_1 + U_2. The second record compares the simplified
/// density bound; both must hold.
std::pair<VerificationRecord, VerificationRecord> check_shifted_smoothing(const SignedMeasure& u1, const SignedMeasure& u2,
                                                             const SignedMeasure& g, int n);

/// Compound Poisson case. The second record compares the integral form of
/// E C(N+k,k)^{-1} with its series and closed forms (lhs = max deviation).
std::pair<VerificationRecord, VerificationRecord> check_poisson_smoothing(const SignedMeasure& u, const SignedMeasure& g,
                                                             double t, int k, std::size_t m_max);

/// k int_0^1 x^{k-1} phi(1-x) dx for the Poisson(t) generating function.
double poisson_inverse_binomial_integral(double t, int k);
/// E C(N+k,k)^{-1} by summing the Poisson series to m_max.
double poisson_inverse_binomial_series(double t, int k, std::size_t m_max);
/// k! P(N >= k) / t^k.
double poisson_inverse_binomial_closed(double t, int k);

}  // namespace convbounds

#endif  // CONVBOUNDS_KRAWTCHOUK_HPP
