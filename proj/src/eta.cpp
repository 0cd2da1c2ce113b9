#include "convbounds/eta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "convbounds/constants.hpp"

namespace convbounds {

namespace {

std::size_t floor_exponent(std::size_t n, std::size_t k) { return (n - k) / k; }

// Rough upper estimate of |supp(G^e)|.
double power_support_estimate(const SignedMeasure& g, std::size_t e) {
    if (g.empty() || e == 0) return 1.0;
    const double s = static_cast<double>(g.size());
    const double ed = static_cast<double>(e);
    const double multiset = std::exp(std::lgamma(ed + s) - std::lgamma(ed + 1.0) - std::lgamma(s));
    double box = 1.0;
    for (std::size_t r = 0; r < g.dimension(); ++r) {
        std::int64_t lo = g.point(0)[r], hi = lo;
        for (std::size_t i = 1; i < g.size(); ++i) {
            lo = std::min(lo, g.point(i)[r]);
            hi = std::max(hi, g.point(i)[r]);
        }
        box *= ed * static_cast<double>(hi - lo) + 1.0;
    }
    return std::min(multiset, box);
}

std::vector<std::size_t> distinct_exponents(std::size_t n) {
    std::vector<std::size_t> es;
    for (std::size_t k = 1; k <= n; ++k) es.push_back(floor_exponent(n, k));
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
}

double chi_or_inf(const SignedMeasure& f, const SignedMeasure& g) {
    try {
        return chi_square(f, g);
    } catch (const AbsoluteContinuityViolation&) {
        return std::numeric_limits<double>::infinity();
    }
}

double sum_min_terms(const std::vector<SignedMeasure>& factors, const SignedMeasure& g, std::size_t ell) {
    const double n = static_cast<double>(factors.size());
    CompensatedSum acc;
    for (const auto& f : factors) {
        const double tv = tv_distance(f, g);
        acc.add(std::min(2.0 / n * chi_or_inf(f, g), tv * tv / (ell + 1.0)));
    }
    return acc.value();
}

void require_ell(std::size_t ell, std::size_t n) {
    if (ell > n) throw std::invalid_argument("ell must not exceed n");
}

}  // namespace

const char* to_string(EtaMethod m) {
    switch (m) {
        case EtaMethod::exact: return "exact";
        case EtaMethod::bound_general: return "bound_general";
        case EtaMethod::bound_mean: return "bound_mean";
        case EtaMethod::bound_categorical: return "bound_categorical";
        case EtaMethod::bound_symmetric: return "bound_symmetric";
    }
    return "?";
}

double eta_exact_workload(const ExpansionInput& input) {
    double diff_atoms = 0.0;
    for (const auto& f : input.factors()) diff_atoms += static_cast<double>(f.size() + input.reference().size());
    double work = 0.0;
    for (std::size_t e : distinct_exponents(input.n()))
        work += (diff_atoms + static_cast<double>(input.reference().size())) *
                power_support_estimate(input.reference(), e);
    return work;
}

double eta_from_terms(const std::vector<EtaTerm>& terms, std::size_t ell, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    const double c1 = constants().c1;
    double best = 0.0;
    for (const auto& t : terms) {
        if (t.k <= ell) continue;
        const double v = (t.nutilde_k * t.nutilde_k / (4.0 * c1) + t.nu_k2) / std::pow(static_cast<double>(t.k), 1.0 + alpha);
        best = std::max(best, v);
    }
    return best;
}

EtaReport eta_exact(const ExpansionInput& input, std::size_t ell, double alpha) {
    const std::size_t n = input.n();
    require_ell(ell, n);
    if (eta_exact_workload(input) > kEtaExactWorkLimit)
        throw std::length_error("eta_exact workload exceeds the enumeration guard");

    const auto& g = input.reference();
    std::vector<SignedMeasure> diffs;
    diffs.reserve(n);
    for (const auto& f : input.factors()) diffs.push_back(f - g);
    const SignedMeasure total = static_cast<double>(n) * (input.mean() - g);

    // exponent -> (nu_k2, nutilde_k)
    std::map<std::size_t, std::pair<double, double>> by_exponent;
    SignedMeasure gp = identity(input.dimension());
    std::size_t current = 0;
    for (std::size_t e : distinct_exponents(n)) {
        if (e > current) {
            gp = convolve(gp, power(g, e - current));
            current = e;
        }
        CompensatedSum nu2;
        for (const auto& d : diffs) {
            const double m = tv_norm(convolve(d, gp));
            nu2.add(m * m);
        }
        const double nut = input.mean_centered() ? 0.0 : tv_norm(convolve(total, gp));
        by_exponent[e] = {nu2.value(), nut};
    }

    EtaReport rep;
    rep.alpha = alpha;
    rep.ell = ell;
    rep.method = EtaMethod::exact;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto& [nu2, nut] = by_exponent.at(floor_exponent(n, k));
        rep.per_k.push_back({k, nu2, nut});
    }
    rep.eta = eta_from_terms(rep.per_k, ell, alpha);
    return rep;
}

EtaReport eta_bound_general(const ExpansionInput& input, std::size_t ell) {
    require_ell(ell, input.n());
    const double n = static_cast<double>(input.n());
    const auto& g = input.reference();
    const double tv_mean = tv_distance(input.mean(), g);
    const double first =
        std::min(2.0 * n * chi_or_inf(input.mean(), g), n * n * tv_mean * tv_mean / (ell + 1.0)) /
        (4.0 * constants().c1);
    EtaReport rep;
    rep.ell = ell;
    rep.method = EtaMethod::bound_general;
    rep.eta = first + sum_min_terms(input.factors(), g, ell);
    return rep;
}

EtaReport eta_bound_mean(const ExpansionInput& input, std::size_t ell) {
    require_ell(ell, input.n());
    EtaReport rep;
    rep.ell = ell;
    rep.method = EtaMethod::bound_mean;
    rep.eta = sum_min_terms(input.factors(), input.mean(), ell);
    return rep;
}

EtaReport eta_bound_categorical(const CategoricalFamily& fam, std::size_t ell) {
    require_ell(ell, fam.n());
    const double n = static_cast<double>(fam.n());
    CompensatedSum acc;
    for (const auto& row : fam.rows()) {
        CompensatedSum chi, abs;
        for (std::size_t r = 0; r <= fam.d(); ++r) {
            const double diff = fam.pbar(r) - row[r];
            chi.add(diff * diff / (n * fam.pbar(r)));
            abs.add(std::abs(diff));
        }
        acc.add(std::min(2.0 * chi.value(), abs.value() * abs.value() / (ell + 1.0)));
    }
    EtaReport rep;
    rep.ell = ell;
    rep.method = EtaMethod::bound_categorical;
    rep.eta = acc.value();
    return rep;
}

EtaReport eta1_bound_symmetric(const SymmetricFamily& fam, std::size_t ell) {
    require_ell(ell, fam.n());
    const double n = static_cast<double>(fam.n());
    const double p0 = fam.pbar(0);
    CompensatedSum acc;
    for (std::size_t j = 0; j < fam.n(); ++j) {
        const double d0 = p0 - fam.p(j, 0);
        double a = d0 * d0 / (2.0 * p0 * p0);
        double abs = std::abs(d0);
        for (std::size_t r = 1; r <= fam.b(); ++r) {
            const double dr = fam.pbar(r) - fam.p(j, r);
            a += 2.0 * dr * dr / (fam.pbar(r) * p0) + dr * dr / (fam.pbar(r) * fam.pbar(r));
            abs += 2.0 * std::abs(dr);
        }
        const double l1 = ell + 1.0;
        acc.add(std::min(4.0 / (n * n) * a, abs * abs / (l1 * l1)));
    }
    EtaReport rep;
    rep.alpha = 1.0;
    rep.ell = ell;
    rep.method = EtaMethod::bound_symmetric;
    rep.eta = acc.value();
    return rep;
}

}  // namespace convbounds
