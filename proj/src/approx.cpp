#include "convbounds/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace convbounds {

namespace {

constexpr std::size_t kBruteforceMaxN = 20;
constexpr double kProductCellLimit = 2e7;

void require_probability(const SignedMeasure& m, const char* what) {
    if (!m.is_probability(1e-12))
        throw std::invalid_argument(std::string(what) + " is not a probability measure");
}

// Upper estimate of the support size of F_1 * ... * F_n.
double product_support_estimate(const std::vector<SignedMeasure>& factors) {
    const std::size_t dim = factors.front().dimension();
    double count = 1.0;
    for (const auto& f : factors) count *= static_cast<double>(std::max<std::size_t>(f.size(), 1));
    double box = 1.0;
    for (std::size_t r = 0; r < dim; ++r) {
        double extent = 1.0;
        for (const auto& f : factors) {
            if (f.empty()) continue;
            std::int64_t lo = f.point(0)[r], hi = lo;
            for (std::size_t i = 0; i < f.size(); ++i) {
                lo = std::min(lo, f.point(i)[r]);
                hi = std::max(hi, f.point(i)[r]);
            }
            extent += static_cast<double>(hi - lo);
        }
        box *= extent;
    }
    return std::min(count, box);
}

void accumulate_subsets(const std::vector<SignedMeasure>& terms, std::size_t start, std::size_t remaining,
                        const SignedMeasure& prefix, std::vector<SignedMeasure>& products) {
    if (remaining == 0) {
        products.push_back(prefix);
        return;
    }
    for (std::size_t j = start; j + remaining <= terms.size(); ++j)
        accumulate_subsets(terms, j + 1, remaining - 1, convolve(prefix, terms[j]), products);
}

}  // namespace

SignedMeasure mean_measure(const std::vector<SignedMeasure>& factors) {
    if (factors.empty()) throw std::invalid_argument("mean of an empty family");
    const double w = 1.0 / static_cast<double>(factors.size());
    std::vector<Term> terms;
    terms.reserve(factors.size());
    for (const auto& f : factors) terms.push_back({w, &f});
    return linear_combine(terms);
}

ExpansionInput::ExpansionInput(std::vector<SignedMeasure> factors)
    : factors_(std::move(factors)),
      reference_(1),
      mean_(1),
      mean_centered_(true) {
    if (factors_.empty()) throw std::invalid_argument("expansion needs n >= 1 factors");
    for (const auto& f : factors_) {
        if (f.dimension() != factors_.front().dimension())
            throw DimensionMismatch(factors_.front().dimension(), f.dimension());
        require_probability(f, "factor");
    }
    mean_ = mean_measure(factors_);
    reference_ = mean_;
}

ExpansionInput::ExpansionInput(std::vector<SignedMeasure> factors, SignedMeasure reference)
    : ExpansionInput(std::move(factors)) {
    if (reference.dimension() != dimension()) throw DimensionMismatch(dimension(), reference.dimension());
    require_probability(reference, "reference distribution");
    mean_centered_ = reference == mean_;
    reference_ = std::move(reference);
}

SignedMeasure gamma_k(const ExpansionInput& input, std::size_t k) {
    if (k == 0) throw std::invalid_argument("gamma_k requires k >= 1");
    std::vector<SignedMeasure> powers;
    powers.reserve(input.n());
    for (const auto& f : input.factors()) powers.push_back(power(input.reference() - f, k));
    std::vector<Term> terms;
    for (const auto& p : powers) terms.push_back({1.0, &p});
    return linear_combine(terms);
}

std::size_t default_k_max(const ExpansionInput& input) { return std::min<std::size_t>(input.n(), 16); }

std::vector<SignedMeasure> v_k_recursive(const ExpansionInput& input, std::size_t k_max) {
    if (k_max > input.n()) throw std::invalid_argument("k_max must not exceed n");
    const std::size_t dim = input.dimension();

    // Gamma_1..Gamma_{k_max} from running powers of (G - F_j).
    std::vector<SignedMeasure> gammas;
    gammas.reserve(k_max + 1);
    gammas.emplace_back(dim);  // unused slot for index 0
    std::vector<SignedMeasure> diffs, running;
    for (const auto& f : input.factors()) diffs.push_back(input.reference() - f);
    running = diffs;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (k > 1)
            for (std::size_t j = 0; j < diffs.size(); ++j) running[j] = convolve(running[j], diffs[j]);
        std::vector<Term> terms;
        for (const auto& p : running) terms.push_back({1.0, &p});
        gammas.push_back(linear_combine(terms));
    }

    std::vector<SignedMeasure> vs;
    vs.reserve(k_max + 1);
    vs.push_back(identity(dim));
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::vector<SignedMeasure> products;
        products.reserve(k);
        for (std::size_t j = 0; j < k; ++j) products.push_back(convolve(vs[j], gammas[k - j]));
        std::vector<Term> terms;
        const double c = -1.0 / static_cast<double>(k);
        for (const auto& p : products) terms.push_back({c, &p});
        vs.push_back(linear_combine(terms));
    }
    return vs;
}

SignedMeasure elementary_symmetric(const std::vector<SignedMeasure>& terms, std::size_t k) {
    if (terms.empty()) throw std::invalid_argument("elementary_symmetric of an empty family");
    const std::size_t dim = terms.front().dimension();
    if (k == 0) return identity(dim);
    if (k > terms.size()) return SignedMeasure(dim);
    std::vector<SignedMeasure> products;
    accumulate_subsets(terms, 0, k, identity(dim), products);
    std::vector<Term> sum;
    sum.reserve(products.size());
    for (const auto& p : products) sum.push_back({1.0, &p});
    return linear_combine(sum);
}

SignedMeasure v_k_bruteforce(const ExpansionInput& input, std::size_t k) {
    if (input.n() > kBruteforceMaxN)
        throw std::length_error("subset enumeration is limited to n <= " + std::to_string(kBruteforceMaxN));
    if (k > input.n()) throw std::invalid_argument("k must not exceed n");
    std::vector<SignedMeasure> diffs;
    for (const auto& f : input.factors()) diffs.push_back(f - input.reference());
    return elementary_symmetric(diffs, k);
}

SignedMeasure w_ell(const ExpansionInput& input, std::size_t ell) {
    if (ell > input.n()) throw std::invalid_argument("ell must not exceed n");
    const auto vs = v_k_recursive(input, ell);
    const auto& g = input.reference();
    SignedMeasure p = power(g, input.n() - ell);
    SignedMeasure w = convolve(vs[ell], p);
    for (std::size_t k = ell; k-- > 0;) {
        p = convolve(p, g);
        if (vs[k].empty()) continue;
        w = w + convolve(vs[k], p);
    }
    return w;
}

SignedMeasure exact_product(const std::vector<SignedMeasure>& factors) {
    if (factors.empty()) throw std::invalid_argument("product of an empty family");
    if (product_support_estimate(factors) > kProductCellLimit)
        throw std::length_error("product support is too large to enumerate");
    SignedMeasure acc = factors.front();
    for (std::size_t j = 1; j < factors.size(); ++j) acc = convolve(acc, factors[j]);
    return acc;
}

double exact_distance(const ExpansionInput& input, std::size_t ell) {
    return tv_distance(exact_product(input.factors()), w_ell(input, ell));
}

}  // namespace convbounds
