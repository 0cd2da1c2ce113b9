#include <doctest.h>

#include <cmath>

#include "convbounds/constants.hpp"

using namespace convbounds;

TEST_CASE("c1 and its maximiser") {
    const auto c = compute_c1();
    CHECK(c.c1 >= 0.694025);
    CHECK(c.c1 < 0.694026);
    CHECK(c.x0 >= 0.936219);
    CHECK(c.x0 < 0.936220);
    // a maximum: neighbours are smaller
    CHECK(h_function(c.x0 - 1e-3) < c.c1);
    CHECK(h_function(c.x0 + 1e-3) < c.c1);
    CHECK(h_derivative_integral(0.5) > 0.0);
    CHECK(h_derivative_integral(1.5) < 0.0);
}

TEST_CASE("roots solve their defining equations") {
    for (int ell = 0; ell <= 8; ++ell) {
        const double x = x_ell(ell);
        CHECK(std::pow(x, ell + 1) + x / 2 == doctest::Approx(1.0).epsilon(1e-13));
        const double xt = xtilde_ell(ell);
        CHECK(std::pow(xt, ell + 1) - xt * xt / 2 + xt == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(x_ell(0) == doctest::Approx(2.0 / 3.0));
    CHECK(xtilde_ell(1) == doctest::Approx(std::sqrt(3.0) - 1.0));
}

TEST_CASE("u and utilde at printed precision") {
    CHECK(u_ell_published(0) == doctest::Approx(5.9));
    CHECK(u_ell_published(1) == doctest::Approx(17.3));
    CHECK(u_ell_published(2) == doctest::Approx(44.5));
    CHECK(u_ell_published(3) == doctest::Approx(107.5));
    CHECK(utilde_ell_published(1) == doctest::Approx(10.94));
    CHECK(utilde_ell_published(2) == doctest::Approx(31.5));
    CHECK(utilde_ell_published(3) == doctest::Approx(82.2));
    CHECK(u_ell(1, ConstantMode::computed) < u_ell(1, ConstantMode::published));
}

TEST_CASE("s_ell crossing points") {
    const double expect[] = {0.182839, 0.196439, 0.205094};
    for (int ell = 1; ell <= 3; ++ell) {
        const double s = s_ell(ell);
        CHECK(std::floor(s * 1e6) / 1e6 == doctest::Approx(expect[ell - 1]).epsilon(1e-12));
        CHECK(zeta(ell, s) == doctest::Approx(trivial_envelope(ell, s)).epsilon(1e-10));
    }
    CHECK_THROWS(s_ell(4));
    CHECK_THROWS(zeta(1, 1.0 / two_e_c1()));
}

TEST_CASE("round up") {
    CHECK(round_up(0.1234561, 6) == doctest::Approx(0.123457));
    CHECK(round_up(0.5, 1) == doctest::Approx(0.5));
    CHECK(round_up(5.8274, 1) == doctest::Approx(5.9));
}

TEST_CASE("cached table agrees with direct evaluation") {
    const auto& t = constants();
    CHECK(t.c1 == compute_c1().c1);
    CHECK(t.u_ell.at(2) == u_ell(2));
    CHECK(t.utilde_ell.at(3) == utilde_ell(3));
    CHECK(t.s_ell.size() == 3);
}
