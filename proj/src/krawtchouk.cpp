#include "convbounds/krawtchouk.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "convbounds/approx.hpp"

namespace convbounds {

namespace {

void enumerate(std::size_t d, std::size_t r, int remaining, bool exact, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (r + 1 == d) {
        if (exact) {
            cur[r] = remaining;
            out.push_back(cur);
        } else {
            for (int x = 0; x <= remaining; ++x) {
                cur[r] = x;
                out.push_back(cur);
            }
        }
        return;
    }
    for (int x = 0; x <= remaining; ++x) {
        cur[r] = x;
        enumerate(d, r + 1, remaining - x, exact, cur, out);
    }
}

double fact(int m) { return std::tgamma(m + 1.0); }

double binom_int(int a, int b) {
    if (b < 0 || b > a) return 0.0;
    return generalized_binomial(a, b);
}

void require_atoms(const std::vector<SignedMeasure>& atoms, const MultinomialParams& params) {
    if (atoms.size() != params.d() + 1) throw std::invalid_argument("need atoms H_0..H_d");
    for (const auto& h : atoms)
        if (!h.is_probability(1e-12)) throw std::invalid_argument("atoms must be probability measures");
}

SignedMeasure mixture(const std::vector<SignedMeasure>& atoms, const MultinomialParams& params) {
    std::vector<Term> terms{{params.p0(), &atoms[0]}};
    for (std::size_t r = 1; r < atoms.size(); ++r) terms.push_back({params.p[r - 1], &atoms[r]});
    return linear_combine(terms);
}

// prod_r (H_r - H_0)^{v_r}
SignedMeasure difference_power(const std::vector<SignedMeasure>& atoms, const MultiIndex& v) {
    SignedMeasure acc = identity(atoms[0].dimension());
    for (std::size_t r = 0; r < v.size(); ++r)
        if (v[r] > 0) acc = convolve(acc, power(atoms[r + 1] - atoms[0], static_cast<std::uint64_t>(v[r])));
    return acc;
}

// int (U/G)^2 dG over supp G; throws when U is not << G.
double density_square(const SignedMeasure& u, const SignedMeasure& g) {
    const Density f = density_wrt(u, g);
    CompensatedSum s;
    for (const auto& [x, fx] : f) s.add(fx * fx * g.mass_at(x));
    return s.value();
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

VerificationRecord finish(VerificationRecord rec) {
    rec.ok = rec.lhs <= rec.rhs + rec.slack;
    return rec;
}

}  // namespace

int MultiIndex::order() const noexcept { return std::accumulate(entries.begin(), entries.end(), 0); }

bool MultiIndex::nonnegative() const noexcept {
    return std::all_of(entries.begin(), entries.end(), [](int x) { return x >= 0; });
}

double MultiIndex::factorial() const {
    double f = 1.0;
    for (int x : entries) f *= fact(x);
    return f;
}

bool MultiIndex::leq(const MultiIndex& other) const {
    if (size() != other.size()) throw std::invalid_argument("multi-index length mismatch");
    for (std::size_t r = 0; r < size(); ++r)
        if (entries[r] > other.entries[r]) return false;
    return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multi-index length mismatch");
    MultiIndex c = a;
    for (std::size_t r = 0; r < a.size(); ++r) c.entries[r] += b.entries[r];
    return c;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multi-index length mismatch");
    MultiIndex c = a;
    for (std::size_t r = 0; r < a.size(); ++r) c.entries[r] -= b.entries[r];
    return c;
}

std::string to_string(const MultiIndex& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t r = 0; r < v.size(); ++r) os << (r ? "," : "") << v[r];
    os << ')';
    return os.str();
}

std::vector<MultiIndex> indices_of_order(std::size_t d, int k) {
    if (d == 0) throw std::invalid_argument("d must be >= 1");
    std::vector<MultiIndex> out;
    if (k < 0) return out;
    MultiIndex cur = MultiIndex::zero(d);
    enumerate(d, 0, k, true, cur, out);
    return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t d, int k) {
    if (d == 0) throw std::invalid_argument("d must be >= 1");
    std::vector<MultiIndex> out;
    if (k < 0) return out;
    MultiIndex cur = MultiIndex::zero(d);
    enumerate(d, 0, k, false, cur, out);
    return out;
}

std::vector<MultiIndex> indices_below(const MultiIndex& v) {
    std::vector<MultiIndex> out{MultiIndex::zero(v.size())};
    for (std::size_t r = 0; r < v.size(); ++r) {
        std::vector<MultiIndex> next;
        for (const auto& u : out)
            for (int x = 0; x <= v[r]; ++x) {
                MultiIndex w = u;
                w[r] = x;
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

MultinomialParams::MultinomialParams(std::vector<double> probs) : p(std::move(probs)) {
    if (p.empty()) throw std::invalid_argument("need d >= 1 probabilities");
    for (double x : p)
        if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("p_r must lie in (0,1)");
    if (!(p0() > 0.0)) throw std::invalid_argument("sum of p_r must be < 1");
}

double MultinomialParams::p0() const noexcept { return 1.0 - std::accumulate(p.begin(), p.end(), 0.0); }

double MultinomialParams::pow(const MultiIndex& v) const {
    double out = 1.0;
    for (std::size_t r = 0; r < v.size(); ++r) out *= std::pow(p[r], v[r]);
    return out;
}

double generalized_binomial(double a, int b) {
    if (b < 0) return 0.0;
    double out = 1.0;
    for (int m = 1; m <= b; ++m) out *= (a - m + 1.0) / m;
    return out;
}

double multinomial_pmf(const MultiIndex& w, int n, const MultinomialParams& params) {
    if (w.size() != params.d()) throw std::invalid_argument("multi-index length mismatch");
    if (n < 0 || !w.nonnegative() || w.order() > n) return 0.0;
    double lg = std::lgamma(n + 1.0) - std::lgamma(n - w.order() + 1.0);
    for (std::size_t r = 0; r < w.size(); ++r) lg += w[r] * std::log(params.p[r]) - std::lgamma(w[r] + 1.0);
    lg += (n - w.order()) * std::log(params.p0());
    return std::exp(lg);
}

double multinomial_pmf_direct(const MultiIndex& w, int n, const MultinomialParams& params) {
    if (n > 30) throw std::invalid_argument("direct evaluation is limited to n <= 30");
    if (w.size() != params.d()) throw std::invalid_argument("multi-index length mismatch");
    if (n < 0 || !w.nonnegative() || w.order() > n) return 0.0;
    return fact(n) / (w.factorial() * fact(n - w.order())) * params.pow(w) * std::pow(params.p0(), n - w.order());
}

double krawtchouk_poly(const MultiIndex& v, const MultiIndex& w, int n, const MultinomialParams& params) {
    double sum = 0.0;
    for (const auto& vt : indices_below(v)) {
        const MultiIndex diff = v - vt;
        double term = generalized_binomial(n - w.order(), diff.order()) * fact(diff.order()) / diff.factorial() *
                      std::pow(params.p0(), vt.order());
        for (std::size_t r = 0; r < v.size(); ++r) term *= std::pow(-params.p[r], diff[r]) * binom_int(w[r], vt[r]);
        sum += term;
    }
    return sum;
}

LatticeFunction delta_r(std::size_t r, LatticeFunction f) {
    return [r, f = std::move(f)](const MultiIndex& w) {
        MultiIndex shifted = w;
        shifted[r] -= 1;
        return f(shifted) - f(w);
    };
}

LatticeFunction delta_composed(const MultiIndex& v, LatticeFunction f) {
    for (std::size_t r = 0; r < v.size(); ++r)
        for (int i = 0; i < v[r]; ++i) f = delta_r(r, std::move(f));
    return f;
}

LatticeFunction delta_operator(const MultiIndex& v, LatticeFunction f) {
    return [v, f = std::move(f)](const MultiIndex& w) {
        double sum = 0.0;
        for (const auto& u : indices_below(v)) {
            double c = ((v.order() - u.order()) % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t r = 0; r < v.size(); ++r) c *= binom_int(v[r], u[r]);
            sum += c * f(w - u);
        }
        return sum;
    };
}

double kr_pairing_closed_form(const MultiIndex& v, const MultiIndex& vt, int n, const MultinomialParams& params) {
    if (v.order() != vt.order()) throw std::invalid_argument("pairing needs |v| = |vt|");
    MultiIndex meet = v;
    for (std::size_t r = 0; r < v.size(); ++r) meet[r] = std::min(v[r], vt[r]);
    const int k = v.order();
    double sum = 0.0;
    for (const auto& w : indices_below(meet)) {
        sum += std::exp(std::lgamma(n + k + 1.0) - std::lgamma(n + 1.0)) * fact((v - w).order()) *
               params.pow(v + vt - w) * std::pow(params.p0(), w.order() + k) /
               (w.factorial() * (v - w).factorial() * (vt - w).factorial());
    }
    return sum;
}

double kr_pairing_sum(const MultiIndex& v, const MultiIndex& vt, int n, const MultinomialParams& params) {
    const int m = n + v.order();
    double sum = 0.0;
    for (const auto& w : indices_up_to(params.d(), m))
        sum += multinomial_pmf(w, m, params) * krawtchouk_poly(v, w, m, params) * krawtchouk_poly(vt, w, m, params);
    return sum;
}

double delta_pmf_via_krawtchouk(const MultiIndex& v, const MultiIndex& w, int n, const MultinomialParams& params) {
    const int m = n + v.order();
    return krawtchouk_poly(v, w, m, params) * multinomial_pmf(w, m, params) * v.factorial() *
           std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) /
           (params.pow(v) * std::pow(params.p0(), v.order()));
}

void FiniteRandomVector::validate() const {
    if (support.empty()) throw std::invalid_argument("empty support");
    CompensatedSum s;
    for (const auto& [x, q] : support) {
        if (x.size() != d()) throw std::invalid_argument("ragged support points");
        if (q < 0.0) throw std::invalid_argument("negative probability");
        s.add(q);
    }
    if (std::abs(s.value() - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
}

VerificationRecord check_delta_expansion(const MultiIndex& v, const std::vector<SignedMeasure>& atoms,
                            const MultinomialParams& params, int n) {
    require_atoms(atoms, params);
    const int m = n + v.order();
    auto pmf = [&](const MultiIndex& w) { return multinomial_pmf(w, n, params); };
    const LatticeFunction dv = delta_operator(v, pmf);
    std::vector<SignedMeasure> products;
    std::vector<double> coefs;
    for (const auto& w : indices_up_to(params.d(), m)) {
        const double c = dv(w);
        if (c == 0.0) continue;
        SignedMeasure hw = power(atoms[0], static_cast<std::uint64_t>(m - w.order()));
        for (std::size_t r = 0; r < w.size(); ++r)
            if (w[r] > 0) hw = convolve(hw, power(atoms[r + 1], static_cast<std::uint64_t>(w[r])));
        products.push_back(std::move(hw));
        coefs.push_back(c);
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < products.size(); ++i) terms.push_back({coefs[i], &products[i]});
    const SignedMeasure lhs = linear_combine(terms);
    const SignedMeasure rhs =
        convolve(power(mixture(atoms, params), static_cast<std::uint64_t>(n)), difference_power(atoms, v));
    const SignedMeasure diff = lhs - rhs;
    double worst = 0.0;
    for (double x : diff.masses()) worst = std::max(worst, std::abs(x));
    VerificationRecord rec{"delta_expansion", worst, 0.0, 1e-10, true, "v=" + to_string(v) + " n=" + std::to_string(n)};
    return finish(rec);
}

VerificationRecord check_coefficient_smoothing(const std::map<MultiIndex, double>& a, const std::vector<SignedMeasure>& atoms,
                              const MultinomialParams& params, int n) {
    require_atoms(atoms, params);
    if (a.empty()) throw std::invalid_argument("coefficient map is empty");
    const int k = a.begin()->first.order();
    std::vector<SignedMeasure> parts;
    std::vector<double> coefs;
    for (const auto& [v, av] : a) {
        if (v.order() != k || v.size() != params.d()) throw std::invalid_argument("all v must have |v| = k");
        parts.push_back(difference_power(atoms, v));
        coefs.push_back(av / v.factorial());
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < parts.size(); ++i) terms.push_back({coefs[i], &parts[i]});
    const SignedMeasure u1 = linear_combine(terms);
    const double lhs = tv_norm(convolve(u1, power(mixture(atoms, params), static_cast<std::uint64_t>(n))));

    CompensatedSum inner;
    for (const auto& w : indices_up_to(params.d(), k)) {
        double s = 0.0;
        for (const auto& [v, av] : a) {
            double c = av / v.factorial();
            for (std::size_t r = 0; r < v.size(); ++r) c *= binom_int(v[r], w[r]);
            s += c;
        }
        inner.add(w.factorial() * fact(k - w.order()) / (params.pow(w) * std::pow(params.p0(), k - w.order())) * s * s);
    }
    const double rhs = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0))) * std::sqrt(inner.value());
    return finish({"coefficient_smoothing", lhs, rhs, 1e-10, true, "k=" + std::to_string(k) + " n=" + std::to_string(n)});
}

VerificationRecord check_expectation_smoothing(const FiniteRandomVector& x, const std::vector<SignedMeasure>& atoms,
                             const MultinomialParams& params, int n, int k) {
    require_atoms(atoms, params);
    x.validate();
    if (x.d() != params.d()) throw std::invalid_argument("random vector dimension must equal d");
    std::vector<SignedMeasure> diffs;
    for (std::size_t r = 1; r < atoms.size(); ++r) diffs.push_back(atoms[r] - atoms[0]);

    std::vector<SignedMeasure> parts;
    std::vector<double> probs;
    for (const auto& [pt, q] : x.support) {
        std::vector<Term> terms;
        for (std::size_t r = 0; r < diffs.size(); ++r) terms.push_back({pt[r], &diffs[r]});
        parts.push_back(power(linear_combine(terms), static_cast<std::uint64_t>(k)));
        probs.push_back(q);
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < parts.size(); ++i) terms.push_back({probs[i], &parts[i]});
    const SignedMeasure u2 = linear_combine(terms);
    const double lhs = tv_norm(convolve(u2, power(mixture(atoms, params), static_cast<std::uint64_t>(n))));

    CompensatedSum expect;
    for (const auto& [xp, qx] : x.support)
        for (const auto& [yp, qy] : x.support) {
            const double x0 = std::accumulate(xp.begin(), xp.end(), 0.0);
            const double y0 = std::accumulate(yp.begin(), yp.end(), 0.0);
            double s = x0 * y0 / params.p0();
            for (std::size_t r = 0; r < xp.size(); ++r) s += xp[r] * yp[r] / params.p[r];
            expect.add(qx * qy * std::pow(s, k));
        }
    const double rhs = std::exp(-0.5 * log_binomial(n + k, k)) * std::sqrt(std::max(0.0, expect.value()));
    return finish({"expectation_smoothing", lhs, rhs, 1e-10, true, "k=" + std::to_string(k) + " n=" + std::to_string(n)});
}

VerificationRecord check_power_smoothing(const SignedMeasure& u, const SignedMeasure& g, int n, int k) {
    if (!g.is_probability(1e-12)) throw std::invalid_argument("G must be a probability measure");
    if (std::abs(u.total_mass()) > 1e-12) throw std::invalid_argument("U must have total mass 0");
    if (k < 1 || n < 0) throw std::invalid_argument("need k >= 1 and n >= 0");
    const double chi = density_square(u, g);
    const double lhs =
        tv_norm(convolve(power(u, static_cast<std::uint64_t>(k)), power(g, static_cast<std::uint64_t>(n))));
    const double rhs = std::exp(-0.5 * log_binomial(n + k, k)) * std::pow(chi, k / 2.0);
    return finish({"power_smoothing", lhs, rhs, 1e-10, true, "k=" + std::to_string(k) + " n=" + std::to_string(n)});
}

std::pair<VerificationRecord, VerificationRecord> check_shifted_smoothing(const SignedMeasure& u1, const SignedMeasure& u2,
                                                             const SignedMeasure& g, int n) {
    if (!g.is_probability(1e-12)) throw std::invalid_argument("G must be a probability measure");
    const SignedMeasure plus = positive_part(u2);
    const SignedMeasure minus = negative_part(u2);
    if (plus.empty() || minus.empty()) throw std::invalid_argument("U_2 needs nonzero positive and negative parts");
    const double np = tv_norm(plus), nm = tv_norm(minus);
    const SignedMeasure f_measure = linear_combine({{1.0 / np, &plus}, {-1.0 / nm, &minus}});
    const double chi_f = density_square(f_measure, g);
    const double chi_h = density_square(u2, g);
    const double m = std::min(np, nm);

    const double lhs = tv_norm(convolve(u1 + u2, power(g, static_cast<std::uint64_t>(n))));
    const double rhs = tv_norm(u1) + std::abs(u2.total_mass()) + m / std::sqrt(n + 1.0) * std::sqrt(chi_f);
    VerificationRecord main = finish({"shifted_smoothing", lhs, rhs, 1e-10, true, "n=" + std::to_string(n)});
    VerificationRecord simplified = finish({"shifted_smoothing_simplified", m * m * chi_f, chi_h, 1e-10, true, ""});
    return {main, simplified};
}

double poisson_inverse_binomial_integral(double t, int k) {
    auto f = [t, k](double x) { return k * std::pow(x, k - 1) * std::exp(-t * x); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-13);
}

double poisson_inverse_binomial_series(double t, int k, std::size_t m_max) {
    const auto w = poisson_weights(t, m_max);
    CompensatedSum s;
    for (std::size_t m = 0; m < w.size(); ++m) s.add(w[m] * std::exp(-log_binomial(static_cast<int>(m) + k, k)));
    return s.value();
}

double poisson_inverse_binomial_closed(double t, int k) {
    return fact(k) * boost::math::gamma_p(static_cast<double>(k), t) / std::pow(t, k);
}

std::pair<VerificationRecord, VerificationRecord> check_poisson_smoothing(const SignedMeasure& u, const SignedMeasure& g,
                                                             double t, int k, std::size_t m_max) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!g.is_probability(1e-12)) throw std::invalid_argument("G must be a probability measure");
    if (std::abs(u.total_mass()) > 1e-12) throw std::invalid_argument("U must have total mass 0");
    const auto weights = poisson_weights(t, m_max);
    const CompoundMeasure phi = compound(weights, g);
    if (phi.truncation_deficit > 1e-12) throw std::invalid_argument("m_max leaves Poisson tail mass above 1e-12");
    const double chi = density_square(u, g);
    const SignedMeasure uk = power(u, static_cast<std::uint64_t>(k));
    const double lhs = tv_norm(convolve(uk, phi.measure));
    const double rhs = std::pow(t, -k / 2.0) * std::sqrt(fact(k) * boost::math::gamma_p(static_cast<double>(k), t)) *
                       std::pow(chi, k / 2.0);
    VerificationRecord main{"poisson_smoothing", lhs, rhs, 1e-10 + phi.truncation_deficit * tv_norm(uk), true,
                            "t=" + std::to_string(t) + " k=" + std::to_string(k)};
    main = finish(main);

    const double integral = poisson_inverse_binomial_integral(t, k);
    const double series = poisson_inverse_binomial_series(t, k, m_max);
    const double closed = poisson_inverse_binomial_closed(t, k);
    const double dev = std::max(std::abs(integral - series), std::abs(integral - closed));
    VerificationRecord forms = finish({"poisson_forms", dev, 0.0, 1e-8, true, ""});
    return {main, forms};
}

}  // namespace convbounds
