#include <doctest.h>

#include <random>
#include <vector>

#include "convbounds/approx.hpp"
#include "convbounds/measure.hpp"

using namespace convbounds;

namespace {

SignedMeasure random_pmf(std::mt19937_64& rng, int width) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> m(width);
    double s = 0.0;
    for (auto& x : m) s += (x = u(rng));
    for (auto& x : m) x /= s;
    return SignedMeasure::from_dense_1d(m);
}

}  // namespace

TEST_CASE("input validation") {
    CHECK_THROWS(ExpansionInput(std::vector<SignedMeasure>{}));
    const std::vector<double> bad{0.5, 0.6};
    CHECK_THROWS(ExpansionInput({SignedMeasure::from_dense_1d(bad)}));
    const std::vector<double> ok{0.5, 0.5};
    const ExpansionInput in({SignedMeasure::from_dense_1d(ok)});
    CHECK(in.mean_centered());
}

TEST_CASE("V_k are elementary symmetric functions of F_j - G") {
    std::mt19937_64 rng(7);
    std::vector<SignedMeasure> fs;
    for (int j = 0; j < 5; ++j) fs.push_back(random_pmf(rng, 3));
    const auto g = random_pmf(rng, 3);
    const ExpansionInput in(fs, g);
    std::vector<SignedMeasure> diffs;
    for (const auto& f : fs) diffs.push_back(f - g);
    const auto v = v_k_recursive(in, 5);
    for (std::size_t k = 1; k <= 5; ++k) {
        CHECK(tv_distance(v[k], elementary_symmetric(diffs, k)) < 1e-12);
        CHECK(tv_distance(v[k], v_k_bruteforce(in, k)) < 1e-12);
    }
}

TEST_CASE("first correction vanishes for the mean") {
    std::mt19937_64 rng(11);
    std::vector<SignedMeasure> fs;
    for (int j = 0; j < 4; ++j) fs.push_back(random_pmf(rng, 4));
    const ExpansionInput in(fs);
    const auto v = v_k_recursive(in, 2);
    CHECK(tv_norm(v[1]) < 1e-14);
    CHECK(tv_distance(w_ell(in, 1), power(in.mean(), 4)) < 1e-14);
}

TEST_CASE("full expansion recovers the product") {
    std::mt19937_64 rng(3);
    std::vector<SignedMeasure> fs;
    for (int j = 0; j < 6; ++j) fs.push_back(random_pmf(rng, 3));
    const ExpansionInput in(fs);
    CHECK(tv_distance(w_ell(in, 6), exact_product(fs)) < 1e-12);
    CHECK(exact_distance(in, 6) < 1e-12);
    // higher order does not lose accuracy on a smooth family
    CHECK(exact_distance(in, 2) <= exact_distance(in, 1));
}

TEST_CASE("gamma_k is a power sum") {
    std::mt19937_64 rng(5);
    std::vector<SignedMeasure> fs{random_pmf(rng, 2), random_pmf(rng, 2)};
    const ExpansionInput in(fs);
    const auto d0 = in.reference() - fs[0];
    const auto d1 = in.reference() - fs[1];
    CHECK(tv_distance(gamma_k(in, 3), power(d0, 3) + power(d1, 3)) < 1e-15);
}
