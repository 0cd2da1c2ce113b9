#include "convbounds/constants.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace convbounds {

namespace {

constexpr double kRootTol = 1e-13;

// Bisection for a continuous f with f(lo), f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if ((flo < 0.0) == (fhi < 0.0)) throw std::runtime_error("bisection bracket has no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void require_ell(int ell, int min) {
    if (ell < min) throw std::invalid_argument("ell must be >= " + std::to_string(min));
}

}  // namespace

double h_function(double x) {
    if (!(x > 0.0)) throw std::domain_error("h is defined on (0, inf)");
    return std::log(2.0 - (1.0 - x) * std::exp(x)) / (x * x);
}

double h_derivative_integral(double x) {
    auto integrand = [](double t) {
        const double e = 2.0 * std::exp(-t) - 1.0;
        const double den = e + t;
        return t * t * e / (den * den);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, x, 8, 1e-13);
}

C1Result compute_c1() {
    const double x0 = bisect(h_derivative_integral, 0.5, 1.5, kRootTol);
    return {h_function(x0), x0};
}

double two_e_c1() {
    static const double value = 2.0 * std::numbers::e * compute_c1().c1;
    return value;
}

double x_ell(int ell) {
    require_ell(ell, 0);
    const double p = ell + 1.0;
    return bisect([p](double x) { return std::pow(x, p) + 0.5 * x - 1.0; }, 1e-9, 1.0 - 1e-9, 1e-15);
}

double xtilde_ell(int ell) {
    require_ell(ell, 0);
    const double p = ell + 1.0;
    return bisect([p](double x) { return std::pow(x, p) - 0.5 * x * x + x - 1.0; }, 1e-9, 1.0 - 1e-9, 1e-15);
}

double u_ell(int ell) {
    require_ell(ell, 0);
    return std::pow(two_e_c1(), (ell + 1) / 2.0) / (1.0 - x_ell(ell));
}

double zeta(int ell, double x) {
    if (ell < 1 || ell > 3) throw std::invalid_argument("zeta is defined for ell in {1,2,3}");
    const double k = two_e_c1();
    if (x < 0.0 || k * x >= 1.0) throw std::domain_error("zeta needs 0 <= x < 1/(2 e c1)");
    const double terms[] = {
        x,
        std::sqrt(3.0) * std::pow(x, 1.5),
        2.0 * x * x,
        std::pow(5.0, 2.5) / 6.0 * std::pow(x, 2.5),
        7.5 * x * x * x,
        std::pow(7.0, 3.5) / 24.0 * std::pow(x, 3.5),
    };
    double sum = std::pow(k * x, 4) / (1.0 - std::sqrt(k * x));
    for (int i = ell - 1; i < 6; ++i) sum += terms[i];
    return sum;
}

double trivial_envelope(int ell, double s) {
    const double t = std::sqrt(two_e_c1() * s);
    return (2.0 - 2.0 * t + t * t - std::pow(t, ell + 1)) / (1.0 - t);
}

double s_ell(int ell) {
    if (ell < 1 || ell > 3) throw std::invalid_argument("s_ell is defined for ell in {1,2,3}");
    // zeta blows up at 1/(2ec1) ~ 0.265, so the bracket stops just short of it.
    const double lo = 0.01;
    const double hi = std::min(0.5, (1.0 - 1e-9) / two_e_c1());
    auto diff = [ell](double s) { return zeta(ell, s) - trivial_envelope(ell, s); };
    int changes = 0;
    double prev = diff(lo);
    for (double s = lo + 1e-3; s < hi; s += 1e-3) {
        const double cur = diff(s);
        if ((cur < 0.0) != (prev < 0.0)) ++changes;
        prev = cur;
    }
    if ((diff(hi) < 0.0) != (prev < 0.0)) ++changes;
    if (changes != 1) throw std::runtime_error("zeta crossing is not unique on the grid");
    return bisect(diff, lo, hi, 1e-15);
}

double utilde_ell(int ell) {
    require_ell(ell, 1);
    if (ell <= 3) {
        const double s = s_ell(ell);
        return zeta(ell, s) / std::pow(s, (ell + 1) / 2.0);
    }
    return std::pow(two_e_c1(), (ell + 1) / 2.0) / (1.0 - xtilde_ell(ell));
}

double round_up(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // Guard against representation error pushing an exact decimal up a step.
    const double scaled = x * scale;
    const double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, std::abs(scaled))) return nearest / scale;
    return std::ceil(scaled) / scale;
}

double u_ell_published(int ell) { return round_up(u_ell(ell), 1); }

double utilde_ell_published(int ell) { return round_up(utilde_ell(ell), ell == 1 ? 2 : 1); }

double u_ell(int ell, ConstantMode mode) {
    return mode == ConstantMode::published ? u_ell_published(ell) : u_ell(ell);
}

double utilde_ell(int ell, ConstantMode mode) {
    return mode == ConstantMode::published ? utilde_ell_published(ell) : utilde_ell(ell);
}

ConstantsTable ConstantsTable::compute(int max_ell) {
    ConstantsTable t;
    const auto c = compute_c1();
    t.c1 = c.c1;
    t.x0 = c.x0;
    for (int ell = 0; ell <= max_ell; ++ell) {
        t.x_ell[ell] = convbounds::x_ell(ell);
        t.xtilde_ell[ell] = convbounds::xtilde_ell(ell);
        t.u_ell[ell] = convbounds::u_ell(ell);
        if (ell >= 1) t.utilde_ell[ell] = convbounds::utilde_ell(ell);
    }
    for (int ell = 1; ell <= 3; ++ell) {
        t.s_ell[ell] = convbounds::s_ell(ell);
        t.zeta_at_s[ell] = zeta(ell, t.s_ell[ell]);
    }
    return t;
}

const ConstantsTable& constants() {
    static const ConstantsTable table = ConstantsTable::compute();
    return table;
}

}  // namespace convbounds
