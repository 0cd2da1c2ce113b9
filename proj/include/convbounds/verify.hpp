#ifndef CONVBOUNDS_VERIFY_HPP
#define CONVBOUNDS_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace convbounds {

/// Summary of one randomized or exhaustive suite.
struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double worst = 0.0;  ///< largest violation or deviation seen
    std::vector<std::string> messages;  ///< first few failures

    bool ok() const noexcept { return instances > 0 && failures == 0; }
    void fail(std::string msg);
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Bi-orthogonality and difference identities over d <= d_max, n <= n_max,
/// |v| <= v_max, exhaustively.
SuiteResult suite_krawtchouk_identities(std::size_t d_max = 3, int n_max = 8, int v_max = 3,
                                        std::uint64_t seed = kDefaultSeed);
/// Delta-coefficient expansion of G^n prod (H_r - H_0)^{v_r}, d <= 2, n <= 6.
SuiteResult suite_delta_expansion(std::uint64_t seed = kDefaultSeed);

SuiteResult suite_coefficient_smoothing(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);
SuiteResult suite_expectation_smoothing(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);
SuiteResult suite_power_smoothing(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);
SuiteResult suite_shifted_smoothing(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);
SuiteResult suite_poisson_smoothing(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);

/// Zero-sum inequalities on random families.
SuiteResult suite_zero_sum(std::size_t count = 100, std::uint64_t seed = kDefaultSeed);

/// Recursion against subset enumeration, closed forms, W_n = product.
SuiteResult suite_expansion(std::size_t count = 100, std::uint64_t seed = kDefaultSeed);

/// Every applicable bound against the exact distance on random 1-D
/// instances (n <= 30).
SuiteResult suite_dominance_random(std::size_t count = 200, std::uint64_t seed = kDefaultSeed);
/// The same on the integer-line versions of the two numerical examples.
SuiteResult suite_dominance_examples();

/// Runs every suite above with default sizes.
std::vector<SuiteResult> run_all_suites(std::uint64_t seed = kDefaultSeed);

}  // namespace convbounds

#endif  // CONVBOUNDS_VERIFY_HPP
