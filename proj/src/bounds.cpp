#include "convbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "convbounds/approx.hpp"

namespace convbounds {

namespace {

constexpr double kE = std::numbers::e;

double factorial(unsigned m) {
    double f = 1.0;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
}

std::string threshold_reason(double eta) {
    std::ostringstream os;
    os.precision(6);
    os << "eta threshold: eta = " << eta << " >= 1/(2 e c1) = " << 1.0 / two_e_c1();
    return os.str();
}

void require_eta(double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
}

}  // namespace

BoundResult BoundResult::of(std::string name, double v) {
    BoundResult b;
    b.name = std::move(name);
    b.value = v;
    return b;
}

BoundResult BoundResult::not_applicable(std::string name, std::string reason) {
    BoundResult b;
    b.name = std::move(name);
    b.reason = std::move(reason);
    return b;
}

BoundResult thm1_bound(double eta_ell, double eta_ell_alpha, std::size_t ell, double alpha) {
    require_eta(eta_ell);
    require_eta(eta_ell_alpha);
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    const double k = two_e_c1();
    const double s = std::sqrt(k * eta_ell);
    BoundResult b;
    if (s >= 1.0) {
        b = BoundResult::not_applicable("thm1", threshold_reason(eta_ell));
    } else {
        const double l1 = static_cast<double>(ell) + 1.0;
        const unsigned beta = static_cast<unsigned>(std::ceil(alpha * l1 / 2.0 - 1e-12));
        b = BoundResult::of("thm1", std::pow(l1, beta) * factorial(beta) * std::pow(k * eta_ell_alpha, l1 / 2.0) /
                                        std::pow(1.0 - s, beta + 1.0));
    }
    b.conditions = {{"eta_ell", eta_ell}, {"threshold", 1.0 / k}, {"eta_ell_alpha", eta_ell_alpha}};
    return b;
}

BoundResult thm1_bound_alpha0(double eta_ell, std::size_t ell) {
    require_eta(eta_ell);
    const double k = two_e_c1();
    const double s = std::sqrt(k * eta_ell);
    BoundResult b = s >= 1.0 ? BoundResult::not_applicable("thm1_alpha0", threshold_reason(eta_ell))
                             : BoundResult::of("thm1_alpha0", std::pow(k * eta_ell, (ell + 1.0) / 2.0) / (1.0 - s));
    b.conditions = {{"eta_ell", eta_ell}, {"threshold", 1.0 / k}};
    return b;
}

BoundResult thm2_bound(double eta, std::size_t ell, bool mean_centered, ConstantMode mode) {
    require_eta(eta);
    const int l = static_cast<int>(ell);
    if (mean_centered) {
        if (ell == 0) throw std::invalid_argument("the mean-centred constant needs ell >= 1");
        return BoundResult::of("thm2_mean", utilde_ell(l, mode) * std::pow(eta, (ell + 1.0) / 2.0));
    }
    return BoundResult::of("thm2", u_ell(l, mode) * std::pow(eta, (ell + 1.0) / 2.0));
}

BoundResult chain_w1(double eta1, ConstantMode mode) {
    require_eta(eta1);
    return BoundResult::of("chain_w1", (1.0 + utilde_ell(2, mode) * std::sqrt(eta1)) * eta1);
}

BoundResult chain_w2(double eta1, ConstantMode mode) {
    require_eta(eta1);
    return BoundResult::of("chain_w2", (std::sqrt(3.0) + utilde_ell(3, mode) * std::sqrt(eta1)) * std::pow(eta1, 1.5));
}

BoundResult chain_w3(double eta1, ConstantMode mode) {
    require_eta(eta1);
    return BoundResult::of("chain_w3", (2.0 + utilde_ell(4, mode) * std::sqrt(eta1)) * eta1 * eta1);
}

EhmBounds ehm_bounds(const CategoricalFamily& fam) {
    if (fam.d() != 1) throw std::invalid_argument("the Bernoulli bound needs d = 1");
    CompensatedSum g2;
    for (const auto& row : fam.rows()) {
        const double diff = fam.pbar(1) - row[1];
        g2.add(diff * diff);
    }
    const double magic = std::min(1.0, 1.0 / (static_cast<double>(fam.n()) * fam.pbar(1) * fam.pbar(0)));
    return {g2.value() / 62.0 * magic, 2.0 * g2.value() * magic};
}

LohConstants loh_constants(const CategoricalFamily& fam) {
    const auto& pb = fam.pbar();
    const std::size_t D = fam.d() + 1;
    auto a = [&](std::size_t r1, std::size_t r2) {
        return 2.0 / pb[r1] + 3.0 / pb[r2] + 1.0 / (kE * pb[r2] * (1.0 - pb[r2]));
    };
    auto c1t = [&](std::size_t r1, std::size_t r2) {
        const double q = 1.0 - pb[r2];
        return std::sqrt(a(r1, r2)) + std::sqrt(1.0 / (2.0 * kE * pb[r2] * q * q));
    };
    auto c2t = [&](std::size_t r1, std::size_t r2, std::size_t r3) {
        if (r2 == r3) return 2.0 / pb[r1] + 2.0 / pb[r2];
        return 1.0 / pb[r1] + 2.0 / (kE * pb[r2] * (1.0 - pb[r2])) + 2.0 / (kE * pb[r3] * (1.0 - pb[r3])) +
               std::sqrt(a(r1, r2)) * std::sqrt(a(r1, r3));
    };
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t r1 = 0; r1 < D; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < D; ++r2) c1 = std::max(c1, std::min(c1t(r1, r2), c1t(r2, r1)));
    for (std::size_t r1 = 0; r1 < D; ++r1)
        for (std::size_t r2 = 0; r2 < D; ++r2)
            for (std::size_t r3 = 0; r3 < D; ++r3)
                if (r2 != r1 && r3 != r1) c2 = std::max(c2, c2t(r1, r2, r3));
    return {c1, c2};
}

BoundResult loh_bound(const CategoricalFamily& fam) {
    const auto [c1, c2] = loh_constants(fam);
    const std::size_t n = fam.n();
    const double nd = static_cast<double>(n);
    const double cond = n >= 2 ? std::max(c1 / std::sqrt(nd), c2 / (2.0 * (nd - 1.0)))
                               : std::numeric_limits<double>::infinity();
    BoundResult b;
    if (n < 2) {
        b = BoundResult::not_applicable("loh", "needs n >= 2");
    } else if (cond > 1.0) {
        std::ostringstream os;
        os.precision(6);
        os << "max{C1/sqrt(n), C2/(2(n-1))} = " << cond << " > 1";
        b = BoundResult::not_applicable("loh", os.str());
    } else {
        const std::size_t D = fam.d() + 1;
        const auto& pb = fam.pbar();
        // prod_i (1 - p_{i,r}) in log space; exact zero when some p_{i,r} = 1
        std::vector<double> prod(D, 1.0);
        for (std::size_t r = 0; r < D; ++r) {
            double lg = 0.0;
            bool zero = false;
            for (const auto& row : fam.rows()) {
                if (row[r] >= 1.0) zero = true;
                else lg += std::log1p(-row[r]);
            }
            prod[r] = zero ? 0.0 : std::exp(lg);
        }
        const double base = c2 / (nd - 1.0) * std::log(2.0 * (nd - 1.0) / c2) + std::pow(c2 / (2.0 * (nd - 1.0)), 2);
        CompensatedSum total;
        for (std::size_t r1 = 0; r1 < D; ++r1)
            for (std::size_t r2 = r1 + 1; r2 < D; ++r2) {
                const double eps = base + 2.0 * c1 / std::sqrt(nd) * std::min(prod[r1], prod[r2]);
                CompensatedSum s;
                for (const auto& row : fam.rows()) s.add(std::abs(row[r1] * pb[r2] - row[r2] * pb[r1]));
                total.add(s.value() * eps);
            }
        b = BoundResult::of("loh", 2.0 * total.value());
    }
    b.conditions = {{"C1", c1}, {"C2", c2}, {"condition", cond}};
    return b;
}

double roos_c3() { return kE / (2.0 - std::sqrt(3.0)); }

RoosBounds roos_bounds(const CategoricalFamily& fam, ConstantMode mode) {
    const double n = static_cast<double>(fam.n());
    const double p0 = fam.pbar(0);
    CompensatedSum sqrt_delta, magic_sum;
    for (std::size_t r = 1; r <= fam.d(); ++r) {
        CompensatedSum sq;
        for (const auto& row : fam.rows()) {
            const double diff = fam.pbar(r) - row[r];
            sq.add(diff * diff);
        }
        const double delta = sq.value() * std::min(4.0 / kE, 1.0 / (n * fam.pbar(r) * p0));
        sqrt_delta.add(std::sqrt(delta));
        magic_sum.add(sq.value() / (n * fam.pbar(r) * p0));
    }
    const double s = sqrt_delta.value();
    const double se = std::sqrt(kE) * s;
    RoosBounds out{BoundResult::of("roos_sqrt_sum", roos_c3() * s * s), {}, {}, {}};
    if (se < 1.0) out.sqrt_sum_refined = BoundResult::of("roos_sqrt_sum_refined", se * se / (1.0 - se));
    else out.sqrt_sum_refined = BoundResult::not_applicable("roos_sqrt_sum_refined", "sum sqrt(e delta(r)) >= 1");
    out.sqrt_sum_refined.conditions = {{"sum_sqrt_e_delta", se}};
    out.magic = BoundResult::of("roos_magic", roos_c3() * static_cast<double>(fam.d()) * magic_sum.value());
    out.magic_improved = BoundResult::of("roos_magic_improved", 2.0 * utilde_ell(1, mode) * magic_sum.value());
    return out;
}

ZeroSumRecord zero_sum_check(const std::vector<SignedMeasure>& ls, double tol) {
    if (ls.empty()) throw std::invalid_argument("zero_sum_check needs at least one measure");
    std::vector<Term> terms;
    for (const auto& l : ls) terms.push_back({1.0, &l});
    if (tv_norm(linear_combine(terms)) >= 1e-10) throw std::invalid_argument("measures must sum to zero");

    ZeroSumRecord rec;
    CompensatedSum t2, t3, t6;
    for (const auto& l : ls) {
        const double m = tv_norm(l);
        t2.add(m * m);
        t3.add(m * m * m);
        t6.add(std::pow(m, 6));
    }
    rec.theta2 = t2.value();
    rec.theta3 = t3.value();
    rec.theta6 = t6.value();
    const double a = rec.theta2, b = rec.theta3;
    rec.rhs = {a / 2.0, b / 3.0, a * a / 8.0, a * b / 6.0, 5.0 / 144.0 * a * a * a, a * a * b / 24.0};
    for (std::size_t k = 2; k <= 7; ++k) {
        rec.lhs[k - 2] = tv_norm(elementary_symmetric(ls, k));
        if (rec.lhs[k - 2] > rec.rhs[k - 2] * (1.0 + 1e-12) + tol) rec.ok = false;
    }
    rec.aux = a > 0.0 ? (b * b - rec.theta6) / (a * a * a) : 0.0;
    if (rec.aux > 0.25 + 1e-12) rec.ok = false;
    return rec;
}

}  // namespace convbounds
