#include "convbounds/report.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "convbounds/approx.hpp"
#include "convbounds/constants.hpp"
#include "convbounds/eta.hpp"

namespace convbounds {

namespace {

std::string format_shape(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool is_categorical(ScenarioKind k) {
    return k == ScenarioKind::example1 || k == ScenarioKind::example2 || k == ScenarioKind::example3_binomial ||
           k == ScenarioKind::example3_linear;
}

CategoricalFamily family_for(const ScenarioSpec& spec) {
    if (spec.kind == ScenarioKind::example1 || spec.kind == ScenarioKind::example3_binomial)
        return gen_example1(spec.n, spec.shape, spec.d);
    return gen_example2(spec.n, spec.shape, spec.d);
}

BoundResult renamed(BoundResult b, std::string name) {
    b.name = std::move(name);
    return b;
}

void categorical_bounds(const CategoricalFamily& fam, std::size_t ell, ReportRow& row) {
    const double eta1 = eta_bound_categorical(fam, 1).eta;
    if (ell == 1) {
        row.bounds.push_back(loh_bound(fam));
        auto roos = roos_bounds(fam);
        row.bounds.push_back(roos.sqrt_sum);
        row.bounds.push_back(roos.sqrt_sum_refined);
        row.bounds.push_back(roos.magic);
        row.bounds.push_back(roos.magic_improved);
        row.bounds.push_back(renamed(chain_w1(eta1), "chain_w1_categorical"));
    } else if (ell == 2) {
        row.bounds.push_back(renamed(chain_w2(eta1), "chain_w2_categorical"));
    } else if (ell == 3) {
        row.bounds.push_back(renamed(chain_w3(eta1), "chain_w3_categorical"));
    }
    const double eta_ell = eta_bound_categorical(fam, ell).eta;
    row.bounds.push_back(renamed(thm1_bound_alpha0(eta_ell, ell), "thm1_categorical"));
    row.bounds.push_back(renamed(thm2_bound(eta1, ell, true), "thm2_categorical"));
    if (fam.d() == 1) {
        const auto ehm = ehm_bounds(fam);
        if (ell == 1) row.bounds.push_back(BoundResult::of("ehm_upper", ehm.upper));
    }
}

void exact_eta_bounds(const ExpansionInput& input, std::size_t ell, ReportRow& row) {
    if (eta_exact_workload(input) > kEtaExactWorkLimit) return;
    const auto rep = eta_exact(input, ell, 0.0);
    const double eta_ell = rep.eta;
    row.bounds.push_back(renamed(thm1_bound_alpha0(eta_ell, ell), "thm1_exact"));
    if (input.mean_centered()) {
        const double eta1 = eta_from_terms(rep.per_k, 1, 0.0);
        row.bounds.push_back(renamed(thm2_bound(eta1, ell, true), "thm2_exact"));
        if (ell == 1) row.bounds.push_back(renamed(chain_w1(eta1), "chain_w1_exact"));
    } else {
        const double eta0 = eta_from_terms(rep.per_k, 0, 0.0);
        row.bounds.push_back(renamed(thm2_bound(eta0, ell, false), "thm2_exact"));
    }
}

}  // namespace

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::example1: return "example1";
        case ScenarioKind::example2: return "example2";
        case ScenarioKind::example3_binomial: return "example3_binomial";
        case ScenarioKind::example3_linear: return "example3_linear";
        case ScenarioKind::symmetric: return "symmetric";
        case ScenarioKind::custom: return "custom";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    for (auto k : {ScenarioKind::example1, ScenarioKind::example2, ScenarioKind::example3_binomial,
                   ScenarioKind::example3_linear, ScenarioKind::symmetric, ScenarioKind::custom})
        if (s == to_string(k)) return k;
    if (s == "1") return ScenarioKind::example1;
    if (s == "2") return ScenarioKind::example2;
    throw std::invalid_argument("unknown scenario kind: " + s);
}

void ScenarioSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (ell < 1 || ell > n) throw std::invalid_argument("ell must lie in 1..n");
    if (is_categorical(kind)) {
        if (!(shape >= 1.0)) throw std::invalid_argument("shape parameter a or b must be >= 1");
        if (d < 1) throw std::invalid_argument("d must be >= 1");
    }
    if (kind == ScenarioKind::symmetric && (shape < 1.0 || shape != std::floor(shape)))
        throw std::invalid_argument("symmetric scenarios need an integer b >= 1");
    if (kind == ScenarioKind::custom && factor_files.empty())
        throw std::invalid_argument("custom scenarios need factor files");
}

std::string ScenarioSpec::id() const {
    std::ostringstream os;
    os << to_string(kind) << "_n" << n;
    if (kind != ScenarioKind::custom) os << "_s" << shape;
    os << "_l" << ell;
    return os.str();
}

CategoricalFamily gen_example1(std::size_t n, double a, std::size_t d) {
    if (n < 1 || !(a >= 1.0)) throw std::invalid_argument("example 1 needs n >= 1 and a >= 1");
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double q = 0.4 + std::pow(static_cast<double>(j) + 9.0, -a);
        std::vector<double> row(d + 1);
        for (std::size_t r = 0; r <= d; ++r)
            row[r] = std::exp(std::lgamma(d + 1.0) - std::lgamma(r + 1.0) - std::lgamma(d - r + 1.0) +
                              static_cast<double>(r) * std::log(q) + static_cast<double>(d - r) * std::log1p(-q));
        rows.push_back(std::move(row));
    }
    return CategoricalFamily(std::move(rows));
}

CategoricalFamily gen_example2(std::size_t n, double b, std::size_t d) {
    if (n < 1 || !(b >= 1.0)) throw std::invalid_argument("example 2 needs n >= 1 and b >= 1");
    const double scale = b * static_cast<double>(n + d);
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        std::vector<double> row(d + 1);
        double total = 0.0;
        for (std::size_t r = 0; r <= d; ++r) total += 1.0 + static_cast<double>(j + r) / scale;
        for (std::size_t r = 0; r <= d; ++r) row[r] = (1.0 + static_cast<double>(j + r) / scale) / total;
        rows.push_back(std::move(row));
    }
    return CategoricalFamily(std::move(rows));
}

SymmetricFamily gen_symmetric(std::size_t n, std::size_t b) {
    if (n < 1 || b < 1) throw std::invalid_argument("symmetric family needs n >= 1 and b >= 1");
    const double scale = static_cast<double>(n + b);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 1; j <= n; ++j) {
        std::vector<double> w(b + 1);
        double total = 0.0;
        for (std::size_t r = 0; r <= b; ++r) {
            w[r] = 1.0 + static_cast<double>(j + r) / scale;
            total += r == 0 ? w[r] : 2.0 * w[r];
        }
        for (auto& x : w) x /= total;
        rows.push_back(std::move(w));
    }
    std::vector<LatticePoint> offsets;
    for (std::size_t r = 1; r <= b; ++r) offsets.push_back(LatticePoint{static_cast<std::int64_t>(r)});
    return SymmetricFamily(std::move(rows), std::move(offsets));
}

ExpansionInput to_integer_line(const CategoricalFamily& fam) { return fam.to_expansion_input(AtomMode::integer_line); }

const BoundResult* ReportRow::find(const std::string& name) const {
    for (const auto& b : bounds)
        if (b.name == name) return &b;
    return nullptr;
}

ReportRow run_report(const ScenarioSpec& spec) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    ReportRow row;
    row.spec = spec;

    if (is_categorical(spec.kind)) {
        const auto fam = family_for(spec);
        row.pbar = fam.pbar();
        categorical_bounds(fam, spec.ell, row);
        if (spec.kind == ScenarioKind::example3_binomial || spec.kind == ScenarioKind::example3_linear)
            row.exact = exact_distance(to_integer_line(fam), spec.ell);
    } else if (spec.kind == ScenarioKind::symmetric) {
        const auto fam = gen_symmetric(spec.n, static_cast<std::size_t>(spec.shape));
        const auto input = fam.to_expansion_input();
        for (std::size_t r = 0; r <= fam.b(); ++r) row.pbar.push_back(fam.pbar(r));
        const double eta1_sym = eta1_bound_symmetric(fam, spec.ell).eta;
        if (eta_exact_workload(input) <= kEtaExactWorkLimit) {
            const auto rep = eta_exact(input, spec.ell, 0.0);
            const double eta_ell_1 = eta_from_terms(rep.per_k, spec.ell, 1.0);
            row.bounds.push_back(renamed(thm1_bound(rep.eta, eta1_sym, spec.ell, 1.0), "thm1_alpha1_symmetric"));
            row.bounds.push_back(renamed(thm1_bound(rep.eta, eta_ell_1, spec.ell, 1.0), "thm1_alpha1_exact"));
        }
        exact_eta_bounds(input, spec.ell, row);
        row.exact = exact_distance(input, spec.ell);
    } else {
        std::vector<SignedMeasure> factors;
        for (const auto& path : spec.factor_files) factors.push_back(read_measure_file(path));
        if (factors.size() != spec.n) throw std::invalid_argument("n must equal the number of factor files");
        const ExpansionInput input(std::move(factors));
        row.bounds.push_back(renamed(thm1_bound_alpha0(eta_bound_mean(input, spec.ell).eta, spec.ell), "thm1_mean"));
        row.bounds.push_back(renamed(thm2_bound(eta_bound_mean(input, 1).eta, spec.ell, true), "thm2_mean"));
        exact_eta_bounds(input, spec.ell, row);
        try {
            row.exact = exact_distance(input, spec.ell);
        } catch (const std::length_error&) {
        }
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<ReportRow> run_reports(const std::vector<ScenarioSpec>& specs) {
    std::vector<std::future<ReportRow>> futures;
    futures.reserve(specs.size());
    for (const auto& s : specs) futures.push_back(std::async(std::launch::async, run_report, s));
    std::vector<ReportRow> rows;
    rows.reserve(specs.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "markdown" || s == "md") return OutputFormat::markdown;
    throw std::invalid_argument("unknown format: " + s);
}

TableLayout table_layout_from_string(const std::string& s) {
    if (s == "table1") return TableLayout::table1;
    if (s == "table3") return TableLayout::table3;
    if (s == "exact") return TableLayout::exact;
    if (s == "full") return TableLayout::full;
    throw std::invalid_argument("unknown table layout: " + s);
}

std::string format_bound(double v, OutputFormat fmt) {
    if (v > 2.0) return fmt == OutputFormat::markdown ? "≥2" : ">=2";
    if (v == 0.0) return "0";
    char buf[64];
    if (v < 1e-5) {
        int e = static_cast<int>(std::floor(std::log10(v)));
        double m = round_up(v / std::pow(10.0, e), 1);
        if (m >= 10.0) {
            m /= 10.0;
            ++e;
        }
        std::snprintf(buf, sizeof buf, "%.1fe%d", m, e);
    } else {
        std::snprintf(buf, sizeof buf, "%.6f", round_up(v, 6));
    }
    return buf;
}

std::string format_constant(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string emit(const std::vector<ReportRow>& rows, OutputFormat fmt, TableLayout layout) {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> body;

    auto cell = [fmt](const ReportRow& row, const std::string& name) -> std::string {
        const BoundResult* b = row.find(name);
        if (!b || !b->applicable()) return "n.a.";
        return format_bound(*b->value, fmt);
    };
    auto condition = [](const ReportRow& row, const std::string& bound, const std::string& key) -> std::string {
        if (const BoundResult* b = row.find(bound))
            for (const auto& [k, v] : b->conditions)
                if (k == key) return format_constant(v);
        return "";
    };

    switch (layout) {
        case TableLayout::table1:
            header = {"n", "a", "C1", "C2", "Loh", "Roos", "Roos refined", "mean chain", "Thm1"};
            for (const auto& r : rows)
                body.push_back({std::to_string(r.spec.n), format_shape(r.spec.shape), condition(r, "loh", "C1"),
                                condition(r, "loh", "C2"), cell(r, "loh"), cell(r, "roos_sqrt_sum"), cell(r, "roos_sqrt_sum_refined"),
                                cell(r, "chain_w1_categorical"), cell(r, "thm1_categorical")});
            break;
        case TableLayout::table3:
            header = {"n", "b", "Loh", "Roos", "Roos refined", "mean chain", "Thm1"};
            for (const auto& r : rows)
                body.push_back({std::to_string(r.spec.n), format_shape(r.spec.shape), cell(r, "loh"),
                                cell(r, "roos_sqrt_sum"), cell(r, "roos_sqrt_sum_refined"), cell(r, "chain_w1_categorical"),
                                cell(r, "thm1_categorical")});
            break;
        case TableLayout::exact:
            header = {"scenario", "n", "shape", "ell", "distance", "distance_raw"};
            for (const auto& r : rows) {
                char raw[64] = "n.a.";
                if (r.exact) std::snprintf(raw, sizeof raw, "%.10e", *r.exact);
                body.push_back({to_string(r.spec.kind), std::to_string(r.spec.n), format_shape(r.spec.shape),
                                std::to_string(r.spec.ell), r.exact ? format_bound(*r.exact, fmt) : "n.a.", raw});
            }
            break;
        case TableLayout::full:
            header = {"scenario", "bound", "value", "raw", "note"};
            for (const auto& r : rows) {
                for (const auto& b : r.bounds) {
                    char raw[64] = "";
                    if (b.value) std::snprintf(raw, sizeof raw, "%.10e", *b.value);
                    std::string note = b.applicable() ? (b.trivial() ? "trivial" : "") : b.reason;
                    body.push_back({r.spec.id(), b.name, cell(r, b.name), raw, note});
                }
                if (r.exact) {
                    char raw[64];
                    std::snprintf(raw, sizeof raw, "%.10e", *r.exact);
                    body.push_back({r.spec.id(), "exact_distance", format_bound(*r.exact, fmt), raw, ""});
                }
            }
            break;
    }

    std::ostringstream os;
    if (fmt == OutputFormat::csv) {
        auto line = [&os](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
                if (i) os << ',';
                if (quote) {
                    os << '"';
                    for (char c : cells[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
                    os << '"';
                } else {
                    os << cells[i];
                }
            }
            os << '\n';
        };
        line(header);
        for (const auto& b : body) line(b);
    } else {
        auto line = [&os](const std::vector<std::string>& cells) {
            os << '|';
            for (const auto& c : cells) os << ' ' << c << " |";
            os << '\n';
        };
        line(header);
        os << '|';
        for (std::size_t i = 0; i < header.size(); ++i) os << "---|";
        os << '\n';
        for (const auto& b : body) line(b);
    }
    return os.str();
}

}  // namespace convbounds
