#include <doctest.h>

#include <cmath>
#include <vector>

#include "convbounds/bounds.hpp"
#include "convbounds/constants.hpp"
#include "convbounds/eta.hpp"
#include "convbounds/report.hpp"

using namespace convbounds;

TEST_CASE("expansion bound needs a small eta") {
    const double k = two_e_c1();
    CHECK_FALSE(thm1_bound(1.0 / k, 1.0 / k, 1, 0.0).applicable());
    const auto b = thm1_bound(0.01, 0.01, 1, 0.0);
    REQUIRE(b.applicable());
    // beta = 0, ell = 1: (K eta) / (1 - sqrt(K eta))
    CHECK(*b.value == doctest::Approx(k * 0.01 / (1.0 - std::sqrt(k * 0.01))));
    CHECK(*thm1_bound_alpha0(0.01, 1).value == doctest::Approx(*b.value));
}

TEST_CASE("threshold-free bounds") {
    CHECK(*thm2_bound(0.01, 1, false).value == doctest::Approx(17.3 * 0.01));
    CHECK(*thm2_bound(0.01, 1, true).value == doctest::Approx(10.94 * 0.01));
    CHECK(*chain_w1(0.0004).value == doctest::Approx((1.0 + 31.5 * 0.02) * 0.0004));
    CHECK(*chain_w2(0.0004).value == doctest::Approx((std::sqrt(3.0) + 82.2 * 0.02) * 0.0004 * 0.02));
    CHECK(*chain_w1(0.0004, ConstantMode::computed).value < *chain_w1(0.0004).value);
}

TEST_CASE("loh comparator on the two numerical families") {
    const auto f1 = gen_example1(100, 1.0);
    const auto c = loh_constants(f1);
    CHECK(c.c1 == doctest::Approx(111.357).epsilon(1e-5));
    CHECK(c.c2 == doctest::Approx(15590.854).epsilon(1e-6));
    CHECK_FALSE(loh_bound(f1).applicable());
    const auto l2 = loh_bound(gen_example2(100, 1.0));
    REQUIRE(l2.applicable());
    CHECK(*l2.value == doctest::Approx(0.32525226).epsilon(1e-7));
}

TEST_CASE("roos comparators") {
    CHECK(roos_c3() == doctest::Approx(std::exp(1.0) / (2.0 - std::sqrt(3.0))));
    const auto r = roos_bounds(gen_example1(100, 1.0));
    CHECK(r.sqrt_sum.trivial());
    CHECK_FALSE(r.sqrt_sum_refined.applicable());
    const auto r2 = roos_bounds(gen_example1(100, 2.0));
    CHECK(*r2.sqrt_sum.value == doctest::Approx(0.1077361).epsilon(1e-6));
    CHECK(*r2.sqrt_sum_refined.value == doctest::Approx(0.0347765).epsilon(1e-6));
}

TEST_CASE("bernoulli two-sided estimate") {
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < 20; ++j) {
        const double p = 0.1 + 0.01 * j;
        rows.push_back({1.0 - p, p});
    }
    const CategoricalFamily fam(rows);
    const auto e = ehm_bounds(fam);
    CHECK(e.lower > 0.0);
    CHECK(e.lower <= e.upper);
}

TEST_CASE("zero-sum inequalities on a small family") {
    const auto a = delta(LatticePoint{0}) - delta(LatticePoint{1});
    const std::vector<SignedMeasure> ls{0.1 * a, -0.05 * a, -0.05 * a};
    const auto rec = zero_sum_check(ls);
    CHECK(rec.ok);
    CHECK(rec.aux <= 0.25);
    CHECK_THROWS(zero_sum_check({0.1 * a}));
}

TEST_CASE("categorical eta bound dominates the exact eta") {
    const auto fam = gen_example2(12, 1.0, 3);
    const auto in = fam.to_expansion_input(AtomMode::integer_line);
    for (std::size_t ell = 1; ell <= 3; ++ell) {
        const double exact = eta_exact(in, ell).eta;
        CHECK(eta_bound_categorical(fam, ell).eta >= exact);
        CHECK(eta_bound_mean(in, ell).eta >= exact);
        CHECK(eta_bound_general(in, ell).eta >= exact);
    }
}
