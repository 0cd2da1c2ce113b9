#include <doctest.h>

#include <cmath>

#include "convbounds/krawtchouk.hpp"

using namespace convbounds;

TEST_CASE("multi-index enumeration") {
    CHECK(indices_of_order(3, 2).size() == 6);
    CHECK(indices_up_to(2, 3).size() == 10);
    CHECK(indices_below(MultiIndex{1, 2}).size() == 6);
    const MultiIndex v{2, 0, 1};
    CHECK(v.order() == 3);
    CHECK(v.factorial() == 2.0);
    CHECK((v - MultiIndex{1, 1, 1}) == MultiIndex{1, -1, 0});
    CHECK_FALSE((v - MultiIndex{1, 1, 1}).nonnegative());
}

TEST_CASE("generalized binomial") {
    CHECK(generalized_binomial(5, 2) == doctest::Approx(10.0));
    CHECK(generalized_binomial(-0.5, 2) == doctest::Approx(0.375));
    CHECK(generalized_binomial(3, -1) == 0.0);
}

TEST_CASE("multinomial pmf") {
    const MultinomialParams p({0.2, 0.3});
    double s = 0.0;
    for (const auto& w : indices_up_to(2, 9)) {
        const double a = multinomial_pmf(w, 9, p);
        CHECK(a == doctest::Approx(multinomial_pmf_direct(w, 9, p)).epsilon(1e-12));
        s += a;
    }
    CHECK(s == doctest::Approx(1.0));
    CHECK(multinomial_pmf(MultiIndex{5, 5}, 9, p) == 0.0);
    CHECK_THROWS(MultinomialParams({0.6, 0.5}));
}

TEST_CASE("krawtchouk polynomials of order zero and one") {
    const MultinomialParams p({0.25});
    for (int w = 0; w <= 6; ++w) CHECK(krawtchouk_poly(MultiIndex{0}, MultiIndex{w}, 6, p) == doctest::Approx(1.0));
    // orthogonality against the constant
    double s = 0.0;
    for (int w = 0; w <= 6; ++w) s += multinomial_pmf(MultiIndex{w}, 6, p) * krawtchouk_poly(MultiIndex{1}, MultiIndex{w}, 6, p);
    CHECK(std::abs(s) < 1e-14);
}

TEST_CASE("difference operators agree") {
    const LatticeFunction f = [](const MultiIndex& w) { return std::exp(0.3 * w[0] - 0.2 * w[1]); };
    const MultiIndex v{2, 1};
    const auto a = delta_operator(v, f);
    const auto b = delta_composed(v, f);
    for (const auto& w : indices_up_to(2, 4)) CHECK(a(w) == doctest::Approx(b(w)).epsilon(1e-12));
}

TEST_CASE("bi-orthogonality and the difference identity") {
    const MultinomialParams p({0.2, 0.35});
    for (const auto& v : indices_of_order(2, 2))
        for (const auto& vt : indices_of_order(2, 2))
            CHECK(kr_pairing_sum(v, vt, 4, p) == doctest::Approx(kr_pairing_closed_form(v, vt, 4, p)).epsilon(1e-10));
    const MultiIndex v{1, 1};
    const LatticeFunction pmf = [&](const MultiIndex& w) { return multinomial_pmf(w, 5, p); };
    const auto d = delta_operator(v, pmf);
    for (const auto& w : indices_up_to(2, 7))
        CHECK(d(w) == doctest::Approx(delta_pmf_via_krawtchouk(v, w, 5, p)).epsilon(1e-10));
}

TEST_CASE("poisson inverse-binomial forms") {
    for (int k = 1; k <= 4; ++k) {
        const double a = poisson_inverse_binomial_closed(2.0, k);
        CHECK(poisson_inverse_binomial_integral(2.0, k) == doctest::Approx(a).epsilon(1e-10));
        CHECK(poisson_inverse_binomial_series(2.0, k, 80) == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("power smoothing on a simple instance") {
    const auto g = SignedMeasure::from_atoms(1, {{LatticePoint{0}, 0.5}, {LatticePoint{1}, 0.5}});
    const auto u = 0.1 * (delta(LatticePoint{1}) - delta(LatticePoint{0}));
    for (int k = 1; k <= 3; ++k) CHECK(check_power_smoothing(u, g, 10, k).ok);
}
