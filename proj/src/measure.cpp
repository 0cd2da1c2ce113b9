#include "convbounds/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace convbounds {

namespace {

bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_dims(const SignedMeasure& a, const SignedMeasure& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
}

// Largest bounding box (in cells) we are willing to allocate for the dense
// convolution path.
constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 23;

}  // namespace

// ---------------------------------------------------------------- LatticePoint

LatticePoint::LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

LatticePoint::LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

LatticePoint::LatticePoint(std::span<const std::int64_t> coords)
    : coords_(coords.begin(), coords.end()) {}

LatticePoint LatticePoint::origin(std::size_t dim) {
    return LatticePoint(std::vector<std::int64_t>(dim, 0));
}

LatticePoint LatticePoint::unit(std::size_t dim, std::size_t r) {
    std::vector<std::int64_t> c(dim, 0);
    c.at(r) = 1;
    return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::operator+(const LatticePoint& other) const {
    if (dimension() != other.dimension()) throw DimensionMismatch(dimension(), other.dimension());
    std::vector<std::int64_t> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
    return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::operator-() const {
    std::vector<std::int64_t> c(coords_);
    for (auto& v : c) v = -v;
    return LatticePoint(std::move(c));
}

std::string to_string(const LatticePoint& x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.dimension(); ++i) os << (i ? "," : "") << x[i];
    os << ')';
    return os.str();
}

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs)) {}

AbsoluteContinuityViolation::AbsoluteContinuityViolation(LatticePoint point)
    : std::domain_error("measure charges " + to_string(point) +
                        " outside the support of the reference measure"),
      point_(std::move(point)) {}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

// ---------------------------------------------------------------- SignedMeasure

SignedMeasure::SignedMeasure(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("lattice dimension must be positive");
}

SignedMeasure SignedMeasure::from_atoms(std::size_t dim,
                                        std::vector<std::pair<LatticePoint, double>> atoms) {
    MeasureBuilder b(dim);
    for (const auto& [x, m] : atoms) b.add(x, m);
    return std::move(b).build();
}

SignedMeasure SignedMeasure::from_dense_1d(std::span<const double> masses, std::int64_t offset) {
    MeasureBuilder b(1);
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const std::int64_t x = offset + static_cast<std::int64_t>(i);
        b.add(std::span<const std::int64_t>(&x, 1), masses[i]);
    }
    return std::move(b).build();
}

double SignedMeasure::mass_at(const LatticePoint& x) const {
    if (x.dimension() != dim_) throw DimensionMismatch(dim_, x.dimension());
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (lex_less(point(mid), x.coords()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && std::ranges::equal(point(lo), x.coords())) return masses_[lo];
    return 0.0;
}

double SignedMeasure::total_mass() const {
    CompensatedSum s;
    for (double m : masses_) s.add(m);
    return s.value();
}

bool SignedMeasure::is_probability(double tol) const {
    if (std::ranges::any_of(masses_, [](double m) { return m < 0.0; })) return false;
    return std::abs(total_mass() - 1.0) <= tol;
}

// ---------------------------------------------------------------- MeasureBuilder

MeasureBuilder::MeasureBuilder(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("lattice dimension must be positive");
}

void MeasureBuilder::add(std::span<const std::int64_t> point, double mass) {
    if (point.size() != dim_) throw DimensionMismatch(dim_, point.size());
    coords_.insert(coords_.end(), point.begin(), point.end());
    masses_.push_back(mass);
}

SignedMeasure MeasureBuilder::build() && {
    const std::size_t n = masses_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto pt = [&](std::size_t i) {
        return std::span<const std::int64_t>(coords_.data() + i * dim_, dim_);
    };
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return lex_less(pt(a), pt(b)); });

    SignedMeasure out(dim_);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        CompensatedSum s;
        while (j < n && std::ranges::equal(pt(order[i]), pt(order[j]))) s.add(masses_[order[j++]]);
        const double m = s.value();
        if (m != 0.0) {
            const auto p = pt(order[i]);
            out.coords_.insert(out.coords_.end(), p.begin(), p.end());
            out.masses_.push_back(m);
        }
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------- operations

SignedMeasure delta(const LatticePoint& x) {
    MeasureBuilder b(x.dimension());
    b.add(x, 1.0);
    return std::move(b).build();
}

SignedMeasure identity(std::size_t dim) { return delta(LatticePoint::origin(dim)); }

SignedMeasure linear_combine(std::span<const Term> terms) {
    if (terms.empty()) throw std::invalid_argument("linear_combine needs at least one term");
    const std::size_t dim = terms.front().measure->dimension();
    MeasureBuilder b(dim);
    for (const auto& t : terms) {
        if (t.measure->dimension() != dim) throw DimensionMismatch(dim, t.measure->dimension());
        for (std::size_t i = 0; i < t.measure->size(); ++i)
            b.add(t.measure->point(i), t.coefficient * t.measure->mass(i));
    }
    return std::move(b).build();
}

SignedMeasure linear_combine(std::initializer_list<Term> terms) {
    return linear_combine(std::span<const Term>(terms.begin(), terms.size()));
}

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
    return linear_combine({{1.0, &a}, {1.0, &b}});
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
    return linear_combine({{1.0, &a}, {-1.0, &b}});
}

SignedMeasure operator*(double c, const SignedMeasure& a) { return linear_combine({{c, &a}}); }

SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b) {
    check_dims(a, b);
    const std::size_t dim = a.dimension();
    if (a.empty() || b.empty()) return SignedMeasure(dim);

    // Bounding boxes; atoms are sorted so the first coordinate range is cheap,
    // the others need a scan.
    std::vector<std::int64_t> amin(dim, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> amax(dim, std::numeric_limits<std::int64_t>::min());
    auto bmin = amin, bmax = amax;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r) {
            amin[r] = std::min(amin[r], a.point(i)[r]);
            amax[r] = std::max(amax[r], a.point(i)[r]);
        }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r) {
            bmin[r] = std::min(bmin[r], b.point(i)[r]);
            bmax[r] = std::max(bmax[r], b.point(i)[r]);
        }

    const std::uint64_t pairs = std::uint64_t{a.size()} * b.size();
    std::vector<std::uint64_t> extent(dim);
    std::uint64_t volume = 1;
    bool dense = true;
    for (std::size_t r = 0; r < dim && dense; ++r) {
        extent[r] = static_cast<std::uint64_t>((amax[r] - amin[r]) + (bmax[r] - bmin[r])) + 1;
        if (extent[r] > kDenseCellLimit || volume > kDenseCellLimit / extent[r]) dense = false;
        else volume *= extent[r];
    }
    dense = dense && volume <= 8 * pairs + 4096;

    if (dense) {
        // Row-major linearization with the last coordinate fastest matches
        // lexicographic order, so the output comes out sorted.
        std::vector<std::uint64_t> stride(dim);
        std::uint64_t s = 1;
        for (std::size_t r = dim; r-- > 0;) {
            stride[r] = s;
            s *= extent[r];
        }
        auto offsets = [&](const SignedMeasure& m, const std::vector<std::int64_t>& lo) {
            std::vector<std::uint64_t> off(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t o = 0;
                for (std::size_t r = 0; r < dim; ++r)
                    o += static_cast<std::uint64_t>(m.point(i)[r] - lo[r]) * stride[r];
                off[i] = o;
            }
            return off;
        };
        const auto aoff = offsets(a, amin);
        const auto boff = offsets(b, bmin);
        std::vector<double> sum(volume, 0.0), comp(volume, 0.0);
        const auto am = a.masses();
        const auto bm = b.masses();
        for (std::size_t i = 0; i < am.size(); ++i) {
            const double ma = am[i];
            double* srow = sum.data() + aoff[i];
            double* crow = comp.data() + aoff[i];
            for (std::size_t j = 0; j < bm.size(); ++j) {
                const std::uint64_t k = boff[j];
                const double x = ma * bm[j];
                const double t = srow[k] + x;
                if (std::abs(srow[k]) >= std::abs(x))
                    crow[k] += (srow[k] - t) + x;
                else
                    crow[k] += (x - t) + srow[k];
                srow[k] = t;
            }
        }
        MeasureBuilder out(dim);
        std::vector<std::int64_t> p(dim);
        for (std::uint64_t k = 0; k < volume; ++k) {
            const double m = sum[k] + comp[k];
            if (m == 0.0) continue;
            std::uint64_t rem = k;
            for (std::size_t r = 0; r < dim; ++r) {
                p[r] = amin[r] + bmin[r] + static_cast<std::int64_t>(rem / stride[r]);
                rem %= stride[r];
            }
            out.add(p, m);
        }
        return std::move(out).build();
    }

    MeasureBuilder out(dim);
    std::vector<std::int64_t> p(dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (std::size_t r = 0; r < dim; ++r) p[r] = a.point(i)[r] + b.point(j)[r];
            out.add(p, a.mass(i) * b.mass(j));
        }
    return std::move(out).build();
}

SignedMeasure power(const SignedMeasure& a, std::uint64_t m) {
    SignedMeasure result = identity(a.dimension());
    if (m == 0) return result;
    SignedMeasure base = a;
    bool first = true;
    while (true) {
        if (m & 1U) {
            result = first ? base : convolve(result, base);
            first = false;
        }
        m >>= 1U;
        if (m == 0) break;
        base = convolve(base, base);
    }
    return result;
}

double tv_norm(const SignedMeasure& a) {
    CompensatedSum s;
    for (double m : a.masses()) s.add(std::abs(m));
    return s.value();
}

double tv_distance(const SignedMeasure& a, const SignedMeasure& b) { return tv_norm(a - b); }

SignedMeasure restrict_to(const SignedMeasure& a,
                          const std::function<bool(std::span<const std::int64_t>, double)>& keep) {
    MeasureBuilder b(a.dimension());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (keep(a.point(i), a.mass(i))) b.add(a.point(i), a.mass(i));
    return std::move(b).build();
}

SignedMeasure restrict_to(const SignedMeasure& a, const std::vector<LatticePoint>& set) {
    std::vector<LatticePoint> sorted(set);
    std::ranges::sort(sorted);
    return restrict_to(a, [&](std::span<const std::int64_t> x, double) {
        return std::ranges::binary_search(sorted, LatticePoint(x));
    });
}

SignedMeasure positive_part(const SignedMeasure& a) {
    return restrict_to(a, [](auto, double m) { return m > 0.0; });
}

SignedMeasure negative_part(const SignedMeasure& a) {
    return -1.0 * restrict_to(a, [](auto, double m) { return m < 0.0; });
}

SignedMeasure prune(const SignedMeasure& a, double eps) {
    return restrict_to(a, [eps](auto, double m) { return std::abs(m) > eps; });
}

Density density_wrt(const SignedMeasure& f, const SignedMeasure& g) {
    check_dims(f, g);
    Density out;
    for (std::size_t i = 0; i < g.size(); ++i) out.emplace(g.point_at(i), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const LatticePoint x = f.point_at(i);
        const double gm = g.mass_at(x);
        if (gm == 0.0) throw AbsoluteContinuityViolation(x);
        out[x] = f.mass(i) / gm;
    }
    return out;
}

double chi_square(const SignedMeasure& f, const SignedMeasure& g) {
    check_dims(f, g);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (g.mass_at(f.point_at(i)) == 0.0) throw AbsoluteContinuityViolation(f.point_at(i));
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double gm = g.mass(i);
        const double diff = f.mass_at(g.point_at(i)) - gm;
        s.add(diff * diff / gm);
    }
    return s.value();
}

CompoundMeasure compound(std::span<const double> weights, const SignedMeasure& g) {
    if (weights.empty()) throw std::invalid_argument("compound needs at least one weight");
    CompensatedSum total;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("compound weights must be non-negative");
        total.add(w);
    }
    std::vector<Term> terms;
    std::vector<SignedMeasure> powers;
    powers.reserve(weights.size());
    powers.push_back(identity(g.dimension()));
    for (std::size_t m = 1; m < weights.size(); ++m) powers.push_back(convolve(powers.back(), g));
    for (std::size_t m = 0; m < weights.size(); ++m)
        if (weights[m] != 0.0) terms.push_back({weights[m], &powers[m]});
    SignedMeasure measure = terms.empty() ? SignedMeasure(g.dimension()) : linear_combine(terms);
    return {std::move(measure), 1.0 - total.value()};
}

std::vector<double> poisson_weights(double t, std::size_t m_max) {
    if (t < 0.0) throw std::domain_error("Poisson parameter must be non-negative");
    std::vector<double> w(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m)
        w[m] = std::exp(static_cast<double>(m) * std::log(t) - t - std::lgamma(static_cast<double>(m) + 1.0));
    if (t == 0.0) {
        std::ranges::fill(w, 0.0);
        w[0] = 1.0;
    }
    return w;
}

// ---------------------------------------------------------------- text format

void write_measure(std::ostream& out, const SignedMeasure& a) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(17);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::int64_t c : a.point(i)) out << c << ' ';
        out << a.mass(i) << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

SignedMeasure read_measure(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    std::vector<std::pair<LatticePoint, double>> atoms;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() < 2)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected coordinates and a mass");
        if (dim == 0) dim = tokens.size() - 1;
        if (tokens.size() - 1 != dim)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(dim) + " coordinates");
        std::vector<std::int64_t> c(dim);
        try {
            for (std::size_t r = 0; r < dim; ++r) {
                std::size_t used = 0;
                c[r] = std::stoll(tokens[r], &used);
                if (used != tokens[r].size()) throw std::invalid_argument(tokens[r]);
            }
            atoms.emplace_back(LatticePoint(std::move(c)), std::stod(tokens[dim]));
        } catch (const std::logic_error&) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": malformed number");
        }
    }
    if (dim == 0) throw std::runtime_error("measure text contains no atoms");
    return SignedMeasure::from_atoms(dim, std::move(atoms));
}

SignedMeasure read_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open measure file " + path);
    return read_measure(in);
}

}  // namespace convbounds
