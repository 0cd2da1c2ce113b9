#ifndef CONVBOUNDS_REPORT_HPP
#define CONVBOUNDS_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "convbounds/bounds.hpp"
#include "convbounds/family.hpp"

namespace convbounds {

enum class ScenarioKind { example1, example2, example3_binomial, example3_linear, symmetric, custom };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::example1;
    std::size_t n = 100;
    double shape = 1.0;  ///< a for example 1, b for example 2 and symmetric
    std::size_t d = 10;
    std::size_t ell = 1;
    /// For custom scenarios: one measure file per factor.
    std::vector<std::string> factor_files;

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
    std::string id() const;
};

/// Rows are binomial(d, q_j) pmfs, q_j = 0.4 + (j + 9)^-a.
CategoricalFamily gen_example1(std::size_t n, double a, std::size_t d = 10);
/// p_{j,r} proportional to 1 + (j + r) / (b (n + d)).
CategoricalFamily gen_example2(std::size_t n, double b, std::size_t d = 10);
/// Symmetric family on Z with offsets 1..b and weights 1 + (j + r) / (n + b).
SymmetricFamily gen_symmetric(std::size_t n, std::size_t b);

/// F_j = sum_r p_{j,r} delta_r on Z.
ExpansionInput to_integer_line(const CategoricalFamily& fam);

struct ReportRow {
    ScenarioSpec spec;
    std::vector<BoundResult> bounds;
    std::optional<double> exact;
    std::vector<double> pbar;
    double seconds = 0.0;

    /// Bound by name; nullptr when not evaluated.
    const BoundResult* find(const std::string& name) const;
};

/// Evaluates every bound that applies to the scenario and, for the
/// one-dimensional kinds, the exact distance to W_ell.
ReportRow run_report(const ScenarioSpec& spec);

/// Evaluates scenarios concurrently; output order follows input order.
std::vector<ReportRow> run_reports(const std::vector<ScenarioSpec>& specs);

enum class OutputFormat { csv, markdown };
enum class TableLayout { table1, table3, exact, full };

OutputFormat output_format_from_string(const std::string& s);
TableLayout table_layout_from_string(const std::string& s);

/// Bounds are rounded up: 6 decimals, or 2 significant digits in
/// scientific notation below 1e-5.
std::string format_bound(double v, OutputFormat fmt);
/// C1/C2-style constants, rounded to nearest at one decimal.
std::string format_constant(double v);

std::string emit(const std::vector<ReportRow>& rows, OutputFormat fmt, TableLayout layout);

}  // namespace convbounds

#endif  // CONVBOUNDS_REPORT_HPP
