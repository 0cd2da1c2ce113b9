#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "convbounds/report.hpp"

using namespace convbounds;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<ScenarioSpec> four_rows(ScenarioKind kind) {
    std::vector<ScenarioSpec> specs;
    for (double shape : {1.0, 2.0})
        for (std::size_t n : {100, 1000}) {
            ScenarioSpec s;
            s.kind = kind;
            s.n = n;
            s.shape = shape;
            specs.push_back(s);
        }
    return specs;
}

}  // namespace

TEST_CASE("bound formatting") {
    CHECK(format_bound(0.1973781, OutputFormat::markdown) == "0.197379");
    CHECK(format_bound(3.6596e-4, OutputFormat::markdown) == "0.000366");
    CHECK(format_bound(3.8101e-7, OutputFormat::markdown) == "3.9e-7");
    CHECK(format_bound(1.0e-6, OutputFormat::markdown) == "1.0e-6");
    CHECK(format_bound(14.34, OutputFormat::markdown) == "≥2");
    CHECK(format_bound(14.34, OutputFormat::csv) == ">=2");
    CHECK(format_bound(0.0, OutputFormat::csv) == "0");
    CHECK(format_constant(15590.854) == "15590.9");
}

TEST_CASE("scenario parsing and validation") {
    CHECK(scenario_kind_from_string("1") == ScenarioKind::example1);
    CHECK(scenario_kind_from_string("example3_linear") == ScenarioKind::example3_linear);
    CHECK_THROWS(scenario_kind_from_string("nope"));
    ScenarioSpec s;
    s.ell = 0;
    CHECK_THROWS(s.validate());
    s.ell = 1;
    s.shape = 0.5;
    CHECK_THROWS(s.validate());
    CHECK_THROWS(table_layout_from_string("wide"));
}

TEST_CASE("mean probabilities of the first family") {
    const double expect[] = {0.00416, 0.03012, 0.09851, 0.19175, 0.24611, 0.21781,
                             0.13473, 0.05757, 0.01628, 0.00276, 0.00021};
    const auto fam = gen_example1(100, 1.0);
    for (std::size_t r = 0; r <= 10; ++r) CHECK(std::round(fam.pbar(r) * 1e5) / 1e5 == doctest::Approx(expect[r]));
}

TEST_CASE("mean probabilities of the second family") {
    const double expect[] = {0.08807, 0.08864, 0.08921, 0.08978, 0.09034, 0.09091,
                             0.09148, 0.09204, 0.09261, 0.09318, 0.09374};
    const auto fam = gen_example2(100, 1.0);
    for (std::size_t r = 0; r <= 10; ++r) CHECK(std::round(fam.pbar(r) * 1e5) / 1e5 == doctest::Approx(expect[r]));
}

TEST_CASE("first family table matches the golden file") {
    const auto rows = run_reports(four_rows(ScenarioKind::example1));
    CHECK(emit(rows, OutputFormat::markdown, TableLayout::table1) == slurp(GOLDEN_DIR "/table1.md"));
}

TEST_CASE("second family table matches the golden file") {
    const auto rows = run_reports(four_rows(ScenarioKind::example2));
    CHECK(emit(rows, OutputFormat::markdown, TableLayout::table3) == slurp(GOLDEN_DIR "/table3.md"));
}

TEST_CASE("csv output has one line per row plus a header") {
    const auto rows = run_reports(four_rows(ScenarioKind::example2));
    const auto csv = emit(rows, OutputFormat::csv, TableLayout::full);
    CHECK(csv.rfind("scenario,bound,value,raw,note", 0) == 0);
    CHECK(csv.find("loh") != std::string::npos);
}

TEST_CASE("symmetric scenario reports every bound above the exact distance") {
    ScenarioSpec s;
    s.kind = ScenarioKind::symmetric;
    s.n = 20;
    s.shape = 2;
    const auto row = run_report(s);
    REQUIRE(row.exact.has_value());
    for (const auto& b : row.bounds)
        if (b.applicable()) CHECK_MESSAGE(*b.value >= *row.exact, b.name);
}
