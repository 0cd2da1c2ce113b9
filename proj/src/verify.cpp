#include "convbounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "convbounds/approx.hpp"
#include "convbounds/bounds.hpp"
#include "convbounds/eta.hpp"
#include "convbounds/family.hpp"
#include "convbounds/krawtchouk.hpp"
#include "convbounds/report.hpp"

namespace convbounds {

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kMaxMessages = 8;

SuiteResult start(std::string name, std::uint64_t seed) {
    SuiteResult res;
    res.name = std::move(name);
    res.seed = seed;
    return res;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Probability vector with small-integer (rational) weights; zeros allowed
// unless `positive`.
std::vector<double> rational_probs(Rng& rng, std::size_t m, bool positive) {
    std::vector<double> w(m);
    double total = 0.0;
    do {
        total = 0.0;
        for (auto& x : w) {
            x = uniform_int(rng, positive ? 1 : 0, 9);
            total += x;
        }
    } while (total == 0.0);
    for (auto& x : w) x /= total;
    return w;
}

// Random probability measure on {0..s}^dim.
SignedMeasure random_probability(Rng& rng, std::size_t dim, int s, bool full_support) {
    const std::size_t cells = static_cast<std::size_t>(std::pow(s + 1, dim));
    const auto probs = rational_probs(rng, cells, full_support);
    MeasureBuilder mb(dim);
    for (std::size_t i = 0; i < cells; ++i) {
        std::vector<std::int64_t> pt(dim);
        std::size_t c = i;
        for (std::size_t r = 0; r < dim; ++r) {
            pt[r] = static_cast<std::int64_t>(c % (s + 1));
            c /= (s + 1);
        }
        mb.add(std::span<const std::int64_t>(pt), probs[i]);
    }
    return std::move(mb).build();
}

SignedMeasure random_signed(Rng& rng, int s, double scale) {
    MeasureBuilder mb(1);
    for (int x = 0; x <= s; ++x)
        if (uniform_int(rng, 0, 3) > 0) mb.add(LatticePoint{x}, uniform(rng, -scale, scale));
    return std::move(mb).build();
}

MultinomialParams random_params(Rng& rng, std::size_t d) {
    std::vector<double> w(d + 1);
    double total = 0.0;
    for (auto& x : w) {
        x = uniform(rng, 0.2, 1.0);
        total += x;
    }
    std::vector<double> p(w.begin() + 1, w.end());
    for (auto& x : p) x /= total;
    return MultinomialParams(std::move(p));
}

double max_abs_diff(const SignedMeasure& a, const SignedMeasure& b) {
    const SignedMeasure d = a - b;
    double worst = 0.0;
    for (double x : d.masses()) worst = std::max(worst, std::abs(x));
    return worst;
}

void record(SuiteResult& res, const VerificationRecord& rec) {
    ++res.instances;
    res.worst = std::max(res.worst, rec.lhs - rec.rhs);
    if (!rec.ok) {
        std::ostringstream os;
        os.precision(12);
        os << rec.name << " " << rec.detail << ": lhs " << rec.lhs << " > rhs " << rec.rhs;
        res.fail(os.str());
    }
}

// Checks a bound value against an exact distance.
void dominates(SuiteResult& res, const std::string& what, const BoundResult& b, double exact) {
    if (!b.applicable()) return;
    ++res.instances;
    const double gap = exact - *b.value;
    res.worst = std::max(res.worst, gap);
    if (gap > 1e-12 * std::max(1.0, exact)) {
        std::ostringstream os;
        os.precision(12);
        os << what << " " << b.name << ": bound " << *b.value << " < exact " << exact;
        res.fail(os.str());
    }
}

std::vector<std::vector<double>> perturbed_rows(Rng& rng, std::size_t n, std::size_t width, double eps) {
    std::vector<double> base(width);
    for (auto& x : base) x = uniform(rng, 0.2, 1.0);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> row(width);
        double total = 0.0;
        for (std::size_t r = 0; r < width; ++r) {
            row[r] = std::max(0.0, base[r] * (1.0 + eps * uniform(rng, -1.0, 1.0)));
            total += row[r];
        }
        for (auto& x : row) x /= total;
        rows.push_back(std::move(row));
    }
    return rows;
}

void mean_centered_checks(SuiteResult& res, const std::string& tag, const ExpansionInput& input,
                          const CategoricalFamily* fam) {
    const std::size_t n = input.n();
    const auto rep = eta_exact(input, 1, 0.0);
    const double eta1 = rep.eta;
    for (std::size_t ell = 1; ell <= std::min<std::size_t>(3, n); ++ell) {
        const double exact = exact_distance(input, ell);
        const double eta_ell = eta_from_terms(rep.per_k, ell, 0.0);
        const double eta_ell_1 = eta_from_terms(rep.per_k, ell, 1.0);
        dominates(res, tag, thm1_bound_alpha0(eta_ell, ell), exact);
        dominates(res, tag, thm1_bound(eta_ell, eta_ell_1, ell, 1.0), exact);
        dominates(res, tag, thm1_bound(eta_ell, eta_from_terms(rep.per_k, ell, 2.0), ell, 2.0), exact);
        dominates(res, tag, thm2_bound(eta1, ell, true), exact);
        dominates(res, tag, thm2_bound(eta_from_terms(rep.per_k, 0, 0.0), ell, false), exact);
        dominates(res, tag, thm1_bound_alpha0(eta_bound_mean(input, ell).eta, ell), exact);
        dominates(res, tag, thm1_bound_alpha0(eta_bound_general(input, ell).eta, ell), exact);
        const double eta1_mean = eta_bound_mean(input, 1).eta;
        dominates(res, tag, thm2_bound(eta1_mean, ell, true), exact);
        if (ell == 1) {
            dominates(res, tag, chain_w1(eta1), exact);
            dominates(res, tag, chain_w1(eta1_mean), exact);
        }
        if (ell == 2) dominates(res, tag, chain_w2(eta1), exact);
        if (ell == 3) dominates(res, tag, chain_w3(eta1), exact);
        if (fam) {
            const double eta_cat = eta_bound_categorical(*fam, 1).eta;
            dominates(res, tag, thm1_bound_alpha0(eta_bound_categorical(*fam, ell).eta, ell), exact);
            dominates(res, tag, thm2_bound(eta_cat, ell, true), exact);
            if (ell == 1) {
                dominates(res, tag, chain_w1(eta_cat), exact);
                dominates(res, tag, loh_bound(*fam), exact);
                const auto roos = roos_bounds(*fam);
                dominates(res, tag, roos.sqrt_sum, exact);
                dominates(res, tag, roos.sqrt_sum_refined, exact);
                dominates(res, tag, roos.magic, exact);
                dominates(res, tag, roos.magic_improved, exact);
                if (fam->d() == 1) {
                    const auto ehm = ehm_bounds(*fam);
                    dominates(res, tag, BoundResult::of("ehm_upper", ehm.upper), exact);
                    ++res.instances;
                    if (ehm.lower > exact + 1e-12) res.fail(tag + " ehm_lower exceeds the exact distance");
                }
            }
            if (ell == 2) dominates(res, tag, chain_w2(eta_cat), exact);
            if (ell == 3) dominates(res, tag, chain_w3(eta_cat), exact);
        }
    }
}

}  // namespace

void SuiteResult::fail(std::string msg) {
    ++failures;
    if (messages.size() < kMaxMessages) messages.push_back(std::move(msg));
}

SuiteResult suite_krawtchouk_identities(std::size_t d_max, int n_max, int v_max, std::uint64_t seed) {
    SuiteResult res = start("krawtchouk_identities", seed);
    Rng rng(seed);
    for (std::size_t d = 1; d <= d_max; ++d) {
        const auto params = random_params(rng, d);
        for (int n = 0; n <= n_max; ++n) {
            for (int k = 0; k <= v_max; ++k) {
                const auto vs = indices_of_order(d, k);
                for (const auto& v : vs)
                    for (const auto& vt : vs) {
                        const double lhs = kr_pairing_sum(v, vt, n, params);
                        const double rhs = kr_pairing_closed_form(v, vt, n, params);
                        const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
                        ++res.instances;
                        res.worst = std::max(res.worst, err);
                        if (err > 1e-10)
                            res.fail("orthogonality v=" + to_string(v) + " vt=" + to_string(vt) + " n=" + std::to_string(n));
                    }
                for (const auto& v : vs) {
                    auto pmf = [&params, n](const MultiIndex& w) { return multinomial_pmf(w, n, params); };
                    const auto dv = delta_operator(v, pmf);
                    const auto dc = delta_composed(v, pmf);
                    for (const auto& w : indices_up_to(d, n + k + 1)) {
                        const double a = dv(w);
                        const double b = delta_pmf_via_krawtchouk(v, w, n, params);
                        const double err = std::max(std::abs(a - b), std::abs(a - dc(w)));
                        ++res.instances;
                        res.worst = std::max(res.worst, err);
                        if (err > 1e-10)
                            res.fail("difference v=" + to_string(v) + " w=" + to_string(w) + " n=" + std::to_string(n));
                    }
                }
            }
        }
    }
    return res;
}

SuiteResult suite_delta_expansion(std::uint64_t seed) {
    SuiteResult res = start("delta_expansion", seed);
    Rng rng(seed);
    for (std::size_t d = 1; d <= 2; ++d) {
        const auto params = random_params(rng, d);
        for (int n = 0; n <= 6; ++n)
            for (int k = 0; k <= 3; ++k)
                for (const auto& v : indices_of_order(d, k)) {
                    const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2));
                    std::vector<SignedMeasure> atoms;
                    for (std::size_t r = 0; r <= d; ++r) atoms.push_back(random_probability(rng, dim, 1, false));
                    record(res, check_delta_expansion(v, atoms, params, n));
                }
    }
    return res;
}

SuiteResult suite_coefficient_smoothing(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("coefficient_smoothing", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        const int k = uniform_int(rng, 1, 3);
        const int n = d == 1 ? uniform_int(rng, 0, 20) : uniform_int(rng, 0, 10);
        const auto params = random_params(rng, d);
        std::vector<SignedMeasure> atoms;
        if (d == 1 && i % 2 == 0) {
            atoms = category_atoms(AtomMode::integer_line, 1);
        } else {
            const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2));
            for (std::size_t r = 0; r <= d; ++r) atoms.push_back(random_probability(rng, dim, 2, false));
        }
        std::map<MultiIndex, double> a;
        for (const auto& v : indices_of_order(d, k)) a[v] = uniform(rng, -1.0, 1.0);
        record(res, check_coefficient_smoothing(a, atoms, params, n));
    }
    return res;
}

SuiteResult suite_expectation_smoothing(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("expectation_smoothing", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        const int k = uniform_int(rng, 1, 3);
        const int n = uniform_int(rng, 0, 8);
        const auto params = random_params(rng, d);
        std::vector<SignedMeasure> atoms;
        const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        for (std::size_t r = 0; r <= d; ++r) atoms.push_back(random_probability(rng, dim, 2, false));
        FiniteRandomVector x;
        const auto probs = rational_probs(rng, static_cast<std::size_t>(uniform_int(rng, 1, 3)), true);
        for (double q : probs) {
            std::vector<double> pt(d);
            for (auto& c : pt) c = uniform(rng, -1.0, 1.0);
            x.support.push_back({pt, q});
        }
        record(res, check_expectation_smoothing(x, atoms, params, n, k));
    }
    return res;
}

SuiteResult suite_power_smoothing(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("power_smoothing", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const SignedMeasure g = random_probability(rng, 1, 5, true);
        const SignedMeasure f = random_probability(rng, 1, 5, false);
        const int k = i < 20 ? 1 : uniform_int(rng, 1, 3);
        const int n = i < 20 ? 0 : uniform_int(rng, 0, 50);
        record(res, check_power_smoothing(f - g, g, n, k));
    }
    return res;
}

SuiteResult suite_shifted_smoothing(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("shifted_smoothing", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const SignedMeasure g = random_probability(rng, 1, 5, true);
        const SignedMeasure u1 = random_signed(rng, 5, 0.3);
        SignedMeasure u2(1);
        while (positive_part(u2).empty() || negative_part(u2).empty()) u2 = random_signed(rng, 5, 0.5);
        const int n = uniform_int(rng, 0, 50);
        const auto [main, simplified] = check_shifted_smoothing(u1, u2, g, n);
        record(res, main);
        record(res, simplified);
    }
    return res;
}

SuiteResult suite_poisson_smoothing(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("poisson_smoothing", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const SignedMeasure g = random_probability(rng, 1, 4, true);
        const SignedMeasure f = random_probability(rng, 1, 4, false);
        const double t = uniform(rng, 0.2, 5.0);
        const int k = uniform_int(rng, 1, 4);
        const auto m_max = static_cast<std::size_t>(std::ceil(t + 12.0 * std::sqrt(t) + 40.0));
        const auto [main, forms] = check_poisson_smoothing(f - g, g, t, k, m_max);
        record(res, main);
        record(res, forms);
    }
    return res;
}

SuiteResult suite_zero_sum(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("zero_sum", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
        const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        std::vector<SignedMeasure> fs;
        for (std::size_t j = 0; j < n; ++j) fs.push_back(random_probability(rng, dim, dim == 1 ? 3 : 1, false));
        const SignedMeasure mean = mean_measure(fs);
        std::vector<SignedMeasure> ls;
        for (const auto& f : fs) ls.push_back(f - mean);
        // The mean is rounded, so re-centre the last measure exactly.
        std::vector<Term> head;
        for (std::size_t j = 0; j + 1 < n; ++j) head.push_back({-1.0, &ls[j]});
        ls.back() = linear_combine(head);
        const auto rec = zero_sum_check(ls);
        ++res.instances;
        for (std::size_t m = 0; m < 6; ++m) res.worst = std::max(res.worst, rec.lhs[m] - rec.rhs[m]);
        if (!rec.ok) res.fail("zero_sum instance " + std::to_string(i));

        // auxiliary inequality on unrelated positive numbers
        std::vector<double> a(static_cast<std::size_t>(uniform_int(rng, 1, 10)));
        double t2 = 0, t3 = 0, t6 = 0;
        for (auto& x : a) {
            x = uniform(rng, 0.01, 2.0);
            t2 += x * x;
            t3 += x * x * x;
            t6 += std::pow(x, 6);
        }
        ++res.instances;
        const double aux = (t3 * t3 - t6) / (t2 * t2 * t2);
        if (aux > 0.25 + 1e-12) res.fail("auxiliary ratio " + std::to_string(aux));
    }
    return res;
}

SuiteResult suite_expansion(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("expansion", seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 8));
        const std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        std::vector<SignedMeasure> fs;
        for (std::size_t j = 0; j < n; ++j) fs.push_back(random_probability(rng, dim, dim == 1 ? 3 : 1, false));
        const bool centred = i % 2 == 0;
        const ExpansionInput input = centred ? ExpansionInput(fs)
                                             : ExpansionInput(fs, random_probability(rng, dim, dim == 1 ? 3 : 1, false));
        const auto vs = v_k_recursive(input, n);
        for (std::size_t k = 0; k <= n; ++k) {
            const double err = max_abs_diff(vs[k], v_k_bruteforce(input, k));
            ++res.instances;
            res.worst = std::max(res.worst, err);
            if (err > 1e-10) res.fail("recursion k=" + std::to_string(k) + " instance " + std::to_string(i));
        }
        if (centred) {
            std::vector<SignedMeasure> g(9, SignedMeasure(dim));
            for (std::size_t k = 2; k <= std::min<std::size_t>(n, 8); ++k) g[k] = gamma_k(input, k);
            auto c = [](const SignedMeasure& a, const SignedMeasure& b) { return convolve(a, b); };
            auto closed = [&](std::size_t k) -> SignedMeasure {
                switch (k) {
                    case 2: return -0.5 * g[2];
                    case 3: return (-1.0 / 3) * g[3];
                    case 4: return 0.125 * c(g[2], g[2]) - 0.25 * g[4];
                    case 5: return (1.0 / 6) * c(g[2], g[3]) - 0.2 * g[5];
                    case 6:
                        return (-1.0 / 48) * c(c(g[2], g[2]), g[2]) + 0.125 * c(g[2], g[4]) +
                               (1.0 / 18) * c(g[3], g[3]) - (1.0 / 6) * g[6];
                    case 7:
                        return (-1.0 / 24) * c(c(g[2], g[2]), g[3]) + 0.1 * c(g[2], g[5]) +
                               (1.0 / 12) * c(g[3], g[4]) - (1.0 / 7) * g[7];
                    default:
                        return (1.0 / 384) * c(c(g[2], g[2]), c(g[2], g[2])) - (1.0 / 32) * c(c(g[2], g[2]), g[4]) -
                               (1.0 / 36) * c(g[2], c(g[3], g[3])) + (1.0 / 12) * c(g[2], g[6]) +
                               (1.0 / 15) * c(g[3], g[5]) + (1.0 / 32) * c(g[4], g[4]) - 0.125 * g[8];
                }
            };
            ++res.instances;
            if (tv_norm(vs[1]) >= 1e-10) res.fail("V_1 is not zero for G = mean");
            for (std::size_t k = 2; k <= std::min<std::size_t>(n, 8); ++k) {
                const double err = max_abs_diff(vs[k], closed(k));
                ++res.instances;
                res.worst = std::max(res.worst, err);
                if (err > 1e-9) res.fail("closed form k=" + std::to_string(k));
            }
        }
        const double tail = tv_distance(exact_product(fs), w_ell(input, n));
        ++res.instances;
        res.worst = std::max(res.worst, tail);
        if (tail >= 1e-10) res.fail("W_n differs from the product by " + std::to_string(tail));
    }
    return res;
}

SuiteResult suite_dominance_random(std::size_t count, std::uint64_t seed) {
    SuiteResult res = start("dominance_random", seed);
    Rng rng(seed);
    const double scales[] = {0.02, 0.1, 0.4, 1.0};
    for (std::size_t i = 0; i < count; ++i) {
        const std::string tag = "instance " + std::to_string(i);
        const int kind = static_cast<int>(i % 20);
        const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 30));
        const double eps = scales[uniform_int(rng, 0, 3)];
        if (kind < 12) {
            const std::size_t d = static_cast<std::size_t>(uniform_int(rng, 1, 3));
            const CategoricalFamily fam(perturbed_rows(rng, n, d + 1, eps));
            mean_centered_checks(res, tag, to_integer_line(fam), &fam);
        } else if (kind < 17) {
            std::vector<SignedMeasure> fs;
            const auto rows = perturbed_rows(rng, n + 1, 4, eps);
            for (std::size_t j = 0; j <= n; ++j) fs.push_back(SignedMeasure::from_dense_1d(rows[j], 0));
            const SignedMeasure g = fs.back();
            fs.pop_back();
            const ExpansionInput input(fs, g);
            const auto rep = eta_exact(input, 0, 0.0);
            for (std::size_t ell = 0; ell <= std::min<std::size_t>(2, n); ++ell) {
                const double exact = exact_distance(input, ell);
                const double eta_ell = eta_from_terms(rep.per_k, ell, 0.0);
                dominates(res, tag, thm1_bound_alpha0(eta_ell, ell), exact);
                dominates(res, tag, thm1_bound(eta_ell, eta_from_terms(rep.per_k, ell, 1.0), ell, 1.0), exact);
                dominates(res, tag, thm2_bound(rep.eta, ell, false), exact);
                dominates(res, tag, thm1_bound_alpha0(eta_bound_general(input, ell).eta, ell), exact);
                dominates(res, tag, thm2_bound(eta_bound_general(input, 0).eta, ell, false), exact);
            }
        } else {
            const std::size_t b = static_cast<std::size_t>(uniform_int(rng, 1, 2));
            std::vector<std::vector<double>> rows;
            const auto base = perturbed_rows(rng, n, b + 1, eps);
            for (const auto& w : base) {
                double total = w[0];
                for (std::size_t r = 1; r <= b; ++r) total += 2.0 * w[r];
                std::vector<double> row(w);
                for (auto& x : row) x /= total;
                rows.push_back(std::move(row));
            }
            std::vector<LatticePoint> offsets;
            for (std::size_t r = 1; r <= b; ++r) offsets.push_back(LatticePoint{static_cast<std::int64_t>(r * (1 + i % 2))});
            const SymmetricFamily fam(std::move(rows), std::move(offsets));
            const auto input = fam.to_expansion_input();
            mean_centered_checks(res, tag, input, nullptr);
            const auto rep = eta_exact(input, 1, 0.0);
            for (std::size_t ell = 1; ell <= std::min<std::size_t>(3, n); ++ell) {
                const double exact = exact_distance(input, ell);
                const double eta_ell = eta_from_terms(rep.per_k, ell, 0.0);
                const auto sym_eta = eta1_bound_symmetric(fam, ell);
                ++res.instances;
                if (sym_eta.eta + 1e-12 < eta_from_terms(rep.per_k, ell, 1.0)) res.fail(tag + " symmetric eta bound below exact eta");
                dominates(res, tag, thm1_bound(eta_ell, sym_eta.eta, ell, 1.0), exact);
            }
        }
    }
    return res;
}

SuiteResult suite_dominance_examples() {
    SuiteResult res = start("dominance_examples", 0);
    std::vector<ScenarioSpec> specs;
    for (auto kind : {ScenarioKind::example3_binomial, ScenarioKind::example3_linear})
        for (double shape : {1.0, 2.0})
            for (std::size_t n : {100, 1000}) {
                ScenarioSpec s;
                s.kind = kind;
                s.n = n;
                s.shape = shape;
                specs.push_back(s);
            }
    for (const auto& row : run_reports(specs)) {
        if (!row.exact) {
            res.fail(row.spec.id() + " has no exact distance");
            continue;
        }
        for (const auto& b : row.bounds) dominates(res, row.spec.id(), b, *row.exact);
    }
    return res;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    return {suite_krawtchouk_identities(3, 8, 3, seed),
            suite_delta_expansion(seed),
            suite_coefficient_smoothing(200, seed),
            suite_expectation_smoothing(200, seed),
            suite_power_smoothing(200, seed),
            suite_shifted_smoothing(200, seed),
            suite_poisson_smoothing(200, seed),
            suite_zero_sum(100, seed),
            suite_expansion(100, seed),
            suite_dominance_random(200, seed),
            suite_dominance_examples()};
}

}  // namespace convbounds
