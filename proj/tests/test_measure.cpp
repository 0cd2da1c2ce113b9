#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "convbounds/measure.hpp"

using namespace convbounds;

namespace {

SignedMeasure bernoulli(double p) {
    const std::vector<double> m{1.0 - p, p};
    return SignedMeasure::from_dense_1d(m);
}

double binom_pmf(int n, int k, double p) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                    (n - k) * std::log1p(-p));
}

}  // namespace

TEST_CASE("builder merges duplicate atoms and drops zeros") {
    MeasureBuilder b(2);
    b.add(LatticePoint{1, 0}, 0.25);
    b.add(LatticePoint{0, 1}, 0.5);
    b.add(LatticePoint{1, 0}, 0.25);
    b.add(LatticePoint{3, 3}, 0.5);
    b.add(LatticePoint{3, 3}, -0.5);
    const auto m = std::move(b).build();
    CHECK(m.size() == 2);
    CHECK(m.mass_at(LatticePoint{1, 0}) == doctest::Approx(0.5));
    CHECK(m.mass_at(LatticePoint{3, 3}) == 0.0);
    CHECK(m.point_at(0) < m.point_at(1));
}

TEST_CASE("mixed dimensions are rejected") {
    CHECK_THROWS_AS(delta(LatticePoint{0}) + delta(LatticePoint{0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(convolve(identity(1), identity(3)), DimensionMismatch);
}

TEST_CASE("bernoulli powers give the binomial law") {
    const double p = 0.3;
    const auto b = power(bernoulli(p), 25);
    CHECK(b.size() == 26);
    for (int k = 0; k <= 25; ++k) CHECK(b.mass_at(LatticePoint{k}) == doctest::Approx(binom_pmf(25, k, p)).epsilon(1e-12));
    CHECK(b.total_mass() == doctest::Approx(1.0));
}

TEST_CASE("power agrees with repeated convolution in two dimensions") {
    const auto f = SignedMeasure::from_atoms(
        2, {{LatticePoint{0, 0}, 0.5}, {LatticePoint{1, 0}, 0.3}, {LatticePoint{0, 1}, 0.2}});
    SignedMeasure acc = identity(2);
    for (int i = 0; i < 7; ++i) acc = convolve(acc, f);
    CHECK(tv_distance(acc, power(f, 7)) < 1e-14);
    CHECK(power(f, 0) == identity(2));
}

TEST_CASE("total variation norm") {
    const auto u = delta(LatticePoint{0}) - delta(LatticePoint{2});
    CHECK(tv_norm(u) == doctest::Approx(2.0));
    CHECK(tv_norm(positive_part(u)) == doctest::Approx(1.0));
    CHECK(tv_norm(negative_part(u)) == doctest::Approx(1.0));
    CHECK(tv_distance(bernoulli(0.2), bernoulli(0.5)) == doctest::Approx(0.6));
    // convolving with a probability measure cannot increase the norm
    CHECK(tv_norm(convolve(u, bernoulli(0.4))) <= tv_norm(u) + 1e-15);
}

TEST_CASE("chi-square distance and absolute continuity") {
    const auto f = bernoulli(0.5);
    const auto g = bernoulli(0.25);
    // sum (f-g)^2 / g
    CHECK(chi_square(f, g) == doctest::Approx(0.0625 / 0.75 + 0.0625 / 0.25));
    CHECK_THROWS_AS(density_wrt(f, delta(LatticePoint{0})), AbsoluteContinuityViolation);
}

TEST_CASE("restriction and pruning") {
    const auto b = power(bernoulli(0.5), 4);
    const auto r = restrict_to(b, std::vector<LatticePoint>{LatticePoint{0}, LatticePoint{4}});
    CHECK(r.total_mass() == doctest::Approx(2.0 / 16.0));
    CHECK(prune(b, 0.1).size() == 3);
}

TEST_CASE("compound poisson weights") {
    const auto w = poisson_weights(1.5, 40);
    double s = 0.0;
    for (double x : w) s += x;
    CHECK(s == doctest::Approx(1.0));
    const auto c = compound(w, bernoulli(0.5));
    CHECK(c.truncation_deficit < 1e-12);
    CHECK(c.measure.total_mass() == doctest::Approx(1.0 - c.truncation_deficit));
}

TEST_CASE("text round trip") {
    const auto f = SignedMeasure::from_atoms(
        2, {{LatticePoint{-1, 2}, -0.125}, {LatticePoint{0, 0}, 1.0}, {LatticePoint{4, -3}, 0.1}});
    std::stringstream ss;
    write_measure(ss, f);
    CHECK(read_measure(ss) == f);
}

TEST_CASE("compensated summation") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    CHECK(s.value() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}
