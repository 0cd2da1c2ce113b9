// Command-line front end: scenario reports, constants, verification suites
// and exact distances.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "convbounds/constants.hpp"
#include "convbounds/report.hpp"
#include "convbounds/verify.hpp"

using namespace convbounds;
using json = nlohmann::json;

namespace {

constexpr int kExitNotApplicable = 2;
constexpr int kExitVerification = 3;

struct RunOptions {
    std::string config;
    std::string example;
    std::vector<std::size_t> n;
    std::vector<double> a;
    std::vector<double> b;
    std::optional<std::size_t> ell;
    std::optional<std::size_t> d;
    std::string format;
    std::string table;
    std::string out;
    std::vector<std::string> require;
    std::vector<std::string> factors;
};

ScenarioSpec spec_from_json(const json& j) {
    ScenarioSpec s;
    s.kind = scenario_kind_from_string(j.value("kind", std::string("example1")));
    s.n = j.value("n", s.n);
    if (j.contains("a")) s.shape = j["a"].get<double>();
    if (j.contains("b")) s.shape = j["b"].get<double>();
    if (j.contains("shape")) s.shape = j["shape"].get<double>();
    s.d = j.value("d", s.d);
    s.ell = j.value("ell", s.ell);
    if (j.contains("factors")) s.factor_files = j["factors"].get<std::vector<std::string>>();
    return s;
}

std::string default_table(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::example1: return "table1";
        case ScenarioKind::example2: return "table3";
        case ScenarioKind::example3_binomial:
        case ScenarioKind::example3_linear: return "exact";
        default: return "full";
    }
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int do_run(const RunOptions& opt) {
    json cfg = json::object();
    if (!opt.config.empty()) {
        std::ifstream f(opt.config);
        if (!f) throw std::runtime_error("cannot open config " + opt.config);
        cfg = json::parse(f);
    }

    std::vector<ScenarioSpec> specs;
    if (cfg.contains("scenarios"))
        for (const auto& j : cfg["scenarios"]) specs.push_back(spec_from_json(j));
    else if (cfg.contains("kind") || cfg.contains("n"))
        specs.push_back(spec_from_json(cfg));

    // Flags replace the matching field; unset fields keep the config values.
    const bool flags_given = !opt.example.empty() || !opt.n.empty() || !opt.a.empty() || !opt.b.empty();
    if (flags_given || specs.empty()) {
        ScenarioKind kind = specs.empty() ? ScenarioKind::example1 : specs.front().kind;
        if (!opt.example.empty()) kind = scenario_kind_from_string(opt.example);
        else if (specs.empty() && opt.a.empty() && !opt.b.empty()) kind = ScenarioKind::example2;
        std::vector<std::size_t> ns = opt.n;
        std::vector<double> shapes = !opt.a.empty() ? opt.a : opt.b;
        for (const auto& s : specs) {
            if (opt.n.empty() && std::find(ns.begin(), ns.end(), s.n) == ns.end()) ns.push_back(s.n);
            if (opt.a.empty() && opt.b.empty() && std::find(shapes.begin(), shapes.end(), s.shape) == shapes.end())
                shapes.push_back(s.shape);
        }
        if (ns.empty()) ns = {100, 1000};
        if (shapes.empty()) shapes = {1.0, 2.0};
        if (kind == ScenarioKind::custom) {
            ScenarioSpec s;
            s.kind = kind;
            s.factor_files = opt.factors;
            s.n = opt.factors.size();
            specs = {s};
        } else {
            specs.clear();
            for (double shape : shapes)
                for (std::size_t n : ns) {
                    ScenarioSpec s;
                    s.kind = kind;
                    s.n = n;
                    s.shape = shape;
                    specs.push_back(s);
                }
        }
    }
    for (auto& s : specs) {
        if (opt.ell) s.ell = *opt.ell;
        if (opt.d) s.d = *opt.d;
    }

    const std::string format = !opt.format.empty() ? opt.format : cfg.value("format", std::string("markdown"));
    const std::string table =
        !opt.table.empty() ? opt.table : cfg.value("table", default_table(specs.front().kind));
    const std::string out = !opt.out.empty() ? opt.out : cfg.value("out", std::string());

    const auto rows = run_reports(specs);
    write_output(emit(rows, output_format_from_string(format), table_layout_from_string(table)), out);

    for (const auto& name : opt.require)
        for (const auto& row : rows) {
            const BoundResult* b = row.find(name);
            if (!b || !b->applicable()) {
                std::cerr << row.spec.id() << ": " << name << " is n.a."
                          << (b ? " (" + b->reason + ")" : std::string()) << '\n';
                return kExitNotApplicable;
            }
        }
    return 0;
}

int do_constants() {
    const auto& t = constants();
    std::printf("c1 = %.12f\nx0 = %.12f\n", t.c1, t.x0);
    for (const auto& [ell, v] : t.u_ell)
        std::printf("u_%d = %.10f (published %.1f) x_%d = %.12f\n", ell, v, u_ell_published(ell), ell, t.x_ell.at(ell));
    for (const auto& [ell, v] : t.utilde_ell)
        std::printf("utilde_%d = %.10f (published %.*f) xtilde_%d = %.12f\n", ell, v, ell == 1 ? 2 : 1,
                    utilde_ell_published(ell), ell, t.xtilde_ell.at(ell));
    for (const auto& [ell, v] : t.s_ell) std::printf("s_%d = %.12f zeta_%d(s_%d) = %.10f\n", ell, v, ell, ell, t.zeta_at_s.at(ell));
    return 0;
}

int do_verify(std::uint64_t seed, const std::string& only) {
    std::vector<SuiteResult> results;
    if (only.empty()) results = run_all_suites(seed);
    else if (only == "krawtchouk") results = {suite_krawtchouk_identities(3, 8, 3, seed), suite_delta_expansion(seed), suite_coefficient_smoothing(200, seed),
                                               suite_expectation_smoothing(200, seed), suite_power_smoothing(200, seed), suite_shifted_smoothing(200, seed),
                                               suite_poisson_smoothing(200, seed)};
    else if (only == "zero_sum") results = {suite_zero_sum(100, seed)};
    else if (only == "expansion") results = {suite_expansion(100, seed)};
    else if (only == "dominance") results = {suite_dominance_random(200, seed), suite_dominance_examples()};
    else throw std::invalid_argument("unknown suite group: " + only);

    bool ok = true;
    for (const auto& r : results) {
        std::printf("%-24s seed=%llu instances=%zu failures=%zu worst=%.3e %s\n", r.name.c_str(),
                    static_cast<unsigned long long>(r.seed), r.instances, r.failures, r.worst, r.ok() ? "PASS" : "FAIL");
        for (const auto& m : r.messages) std::printf("    %s\n", m.c_str());
        ok = ok && r.ok();
    }
    return ok ? 0 : kExitVerification;
}

int do_exact(const RunOptions& opt) {
    ScenarioSpec s;
    s.kind = ScenarioKind::example3_binomial;
    if (opt.example == "2" || opt.example == "example2" || opt.example == "example3_linear" || !opt.b.empty())
        s.kind = ScenarioKind::example3_linear;
    s.n = opt.n.empty() ? 100 : opt.n.front();
    s.shape = !opt.a.empty() ? opt.a.front() : !opt.b.empty() ? opt.b.front() : 1.0;
    if (opt.ell) s.ell = *opt.ell;
    if (opt.d) s.d = *opt.d;
    const auto rows = run_reports({s});
    const std::string format = opt.format.empty() ? "markdown" : opt.format;
    write_output(emit(rows, output_format_from_string(format), TableLayout::exact), opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total-variation bounds for convolutions of lattice distributions"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Evaluate bounds for one or more scenarios");
    run->add_option("--config", run_opt.config, "JSON config file");
    run->add_option("--example", run_opt.example, "example1, example2, example3_binomial, example3_linear, symmetric, custom");
    run->add_option("--n", run_opt.n, "number of factors (repeatable)");
    run->add_option("--a", run_opt.a, "shape a of example 1 (repeatable)");
    run->add_option("--b", run_opt.b, "shape b of example 2 / symmetric (repeatable)");
    run->add_option("--ell", run_opt.ell, "expansion order");
    run->add_option("--d", run_opt.d, "number of categories minus one");
    run->add_option("--format", run_opt.format, "csv or markdown");
    run->add_option("--table", run_opt.table, "table1, table3, exact or full");
    run->add_option("--out", run_opt.out, "output path");
    run->add_option("--require", run_opt.require, "exit 2 when this bound is n.a.");
    run->add_option("--factor", run_opt.factors, "measure file for a custom scenario (repeatable)");

    auto* cons = app.add_subcommand("constants", "Print the explicit constants");

    std::uint64_t seed = kDefaultSeed;
    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--suite", suite, "krawtchouk, zero_sum, expansion or dominance");

    RunOptions exact_opt;
    auto* exact = app.add_subcommand("exact", "Exact distance for a one-dimensional example");
    exact->add_option("--example", exact_opt.example, "1 or 2");
    exact->add_option("--n", exact_opt.n, "number of factors");
    exact->add_option("--a", exact_opt.a, "shape a");
    exact->add_option("--b", exact_opt.b, "shape b");
    exact->add_option("--ell", exact_opt.ell, "expansion order");
    exact->add_option("--d", exact_opt.d, "number of categories minus one");
    exact->add_option("--format", exact_opt.format, "csv or markdown");
    exact->add_option("--out", exact_opt.out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return do_run(run_opt);
        if (*cons) return do_constants();
        if (*verify) return do_verify(seed, suite);
        if (*exact) return do_exact(exact_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
