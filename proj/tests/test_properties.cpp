#include <doctest.h>

#include <random>
#include <vector>

#include "convbounds/approx.hpp"
#include "convbounds/measure.hpp"
#include "convbounds/verify.hpp"

using namespace convbounds;

namespace {

SignedMeasure random_signed(std::mt19937_64& rng, std::size_t dim, int atoms) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::normal_distribution<double> m(0.0, 1.0);
    MeasureBuilder b(dim);
    for (int i = 0; i < atoms; ++i) {
        std::vector<std::int64_t> x(dim);
        for (auto& xi : x) xi = c(rng);
        b.add(LatticePoint(x), m(rng));
    }
    return std::move(b).build();
}

}  // namespace

TEST_CASE("norm is subadditive and submultiplicative") {
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 300; ++i) {
        const std::size_t dim = 1 + i % 3;
        const auto a = random_signed(rng, dim, 6);
        const auto b = random_signed(rng, dim, 6);
        CHECK(tv_norm(a + b) <= tv_norm(a) + tv_norm(b) + 1e-12);
        CHECK(tv_norm(convolve(a, b)) <= tv_norm(a) * tv_norm(b) * (1 + 1e-12));
        CHECK(tv_distance(convolve(a, b), convolve(b, a)) < 1e-12);
    }
}

TEST_CASE("convolution is associative and distributes over sums") {
    std::mt19937_64 rng(kDefaultSeed + 1);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_signed(rng, 2, 5);
        const auto b = random_signed(rng, 2, 5);
        const auto c = random_signed(rng, 2, 5);
        const double scale = tv_norm(a) * tv_norm(b) * tv_norm(c);
        CHECK(tv_distance(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) < 1e-12 * scale);
        CHECK(tv_distance(convolve(a, b + c), convolve(a, b) + convolve(a, c)) < 1e-12 * scale);
    }
}

// The randomized suites at reduced size; the acceptance binary runs the full ones.
TEST_CASE("randomized suites") {
    CHECK(suite_expansion(30).ok());
    CHECK(suite_zero_sum(30).ok());
    CHECK(suite_dominance_random(40).ok());
    CHECK(suite_coefficient_smoothing(40).ok());
    CHECK(suite_expectation_smoothing(40).ok());
    CHECK(suite_power_smoothing(40).ok());
    CHECK(suite_shifted_smoothing(40).ok());
    CHECK(suite_poisson_smoothing(40).ok());
}

TEST_CASE("suites are reproducible for a fixed seed") {
    const auto a = suite_dominance_random(20, 99);
    const auto b = suite_dominance_random(20, 99);
    CHECK(a.instances == b.instances);
    CHECK(a.worst == b.worst);
}
