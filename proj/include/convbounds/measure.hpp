#ifndef CONVBOUNDS_MEASURE_HPP
#define CONVBOUNDS_MEASURE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace convbounds {

/// A point of the integer lattice Z^d.
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::vector<std::int64_t> coords);
    LatticePoint(std::initializer_list<std::int64_t> coords);
    explicit LatticePoint(std::span<const std::int64_t> coords);

    /// The origin of Z^d.
    static LatticePoint origin(std::size_t dim);
    /// The unit vector with 1 at position `r` (0-based).
    static LatticePoint unit(std::size_t dim, std::size_t r);

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::span<const std::int64_t> coords() const noexcept { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }

    LatticePoint operator+(const LatticePoint& other) const;
    LatticePoint operator-() const;

    auto operator<=>(const LatticePoint&) const = default;
    bool operator==(const LatticePoint&) const = default;

private:
    std::vector<std::int64_t> coords_;
};

std::string to_string(const LatticePoint& x);

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

/// Raised by density_wrt when the numerator charges a point the reference
/// measure does not.
class AbsoluteContinuityViolation : public std::domain_error {
public:
    explicit AbsoluteContinuityViolation(LatticePoint point);
    const LatticePoint& point() const noexcept { return point_; }

private:
    LatticePoint point_;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/**
 * Finitely supported real-valued measure on Z^d.
 *
 * Atoms are kept sorted lexicographically by coordinates in a flat layout
 * (coordinates row-major, one mass per atom). No stored mass is exactly 0.0.
 * Instances are immutable once built; every operation returns a new measure.
 */
class SignedMeasure {
public:
    /// Zero measure of the given dimension.
    explicit SignedMeasure(std::size_t dim = 1);

    /// Builds a measure from (point, mass) pairs. Repeated points are summed
    /// and atoms whose total is exactly zero are dropped.
    static SignedMeasure from_atoms(std::size_t dim,
                                    std::vector<std::pair<LatticePoint, double>> atoms);

    /// Convenience for d = 1: masses[i] sits at offset + i.
    static SignedMeasure from_dense_1d(std::span<const double> masses, std::int64_t offset = 0);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return masses_.size(); }
    bool empty() const noexcept { return masses_.empty(); }

    std::span<const std::int64_t> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    LatticePoint point_at(std::size_t i) const { return LatticePoint(point(i)); }
    double mass(std::size_t i) const noexcept { return masses_[i]; }
    std::span<const double> masses() const noexcept { return masses_; }

    /// Mass at `x`, 0 when `x` is not an atom.
    double mass_at(const LatticePoint& x) const;
    /// Compensated sum of all masses, M(Z^d).
    double total_mass() const;

    /// True when all masses are >= 0 and the total mass is 1 within `tol`.
    bool is_probability(double tol = 1e-12) const;

    bool operator==(const SignedMeasure&) const = default;

private:
    friend class MeasureBuilder;

    std::size_t dim_;
    std::vector<std::int64_t> coords_;
    std::vector<double> masses_;
};

/// Accumulates (point, mass) contributions and produces a canonical measure.
class MeasureBuilder {
public:
    explicit MeasureBuilder(std::size_t dim);
    void add(std::span<const std::int64_t> point, double mass);
    void add(const LatticePoint& point, double mass) { add(point.coords(), mass); }
    SignedMeasure build() &&;

private:
    std::size_t dim_;
    std::vector<std::int64_t> coords_;
    std::vector<double> masses_;
};

struct Term {
    double coefficient;
    const SignedMeasure* measure;
};

SignedMeasure delta(const LatticePoint& x);
/// delta at the origin of Z^dim, the convolution identity.
SignedMeasure identity(std::size_t dim);

/// Atom-wise sum of coefficient * measure. Exact zeros are removed.
SignedMeasure linear_combine(std::span<const Term> terms);
SignedMeasure linear_combine(std::initializer_list<Term> terms);

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);
SignedMeasure operator*(double c, const SignedMeasure& a);

/// (A*B)(z) = sum over x+y=z of A(x)B(y), compensated per output atom.
SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b);
/// m-fold convolution by binary exponentiation; power(A, 0) is delta_0.
SignedMeasure power(const SignedMeasure& a, std::uint64_t m);

double tv_norm(const SignedMeasure& a);
double tv_distance(const SignedMeasure& a, const SignedMeasure& b);

SignedMeasure restrict_to(const SignedMeasure& a,
                          const std::function<bool(std::span<const std::int64_t>, double)>& keep);
SignedMeasure restrict_to(const SignedMeasure& a, const std::vector<LatticePoint>& set);

/// Discrete Hahn-Jordan parts; both are non-negative.
SignedMeasure positive_part(const SignedMeasure& a);
SignedMeasure negative_part(const SignedMeasure& a);

/// Drops atoms with |mass| <= eps. Never used on exact-distance paths.
SignedMeasure prune(const SignedMeasure& a, double eps);

using Density = std::map<LatticePoint, double>;

/// Pointwise ratio F(x)/G(x) over support(G). Throws
/// AbsoluteContinuityViolation when F charges a point outside support(G).
Density density_wrt(const SignedMeasure& f, const SignedMeasure& g);

/// sum over support(G) of (F(x)/G(x) - 1)^2 G(x), i.e. the chi-square
/// integral of F against G.
double chi_square(const SignedMeasure& f, const SignedMeasure& g);

struct CompoundMeasure {
    SignedMeasure measure;
    /// 1 - sum(weights); the probability mass not represented.
    double truncation_deficit;
};

/// sum over m of weights[m] * G^m.
CompoundMeasure compound(std::span<const double> weights, const SignedMeasure& g);

/// Poisson(t) probabilities for m = 0..m_max.
std::vector<double> poisson_weights(double t, std::size_t m_max);

/// Line format: one atom per line, "c1 ... cd mass". '#' starts a comment.
void write_measure(std::ostream& out, const SignedMeasure& a);
SignedMeasure read_measure(std::istream& in);
SignedMeasure read_measure_file(const std::string& path);

}  // namespace convbounds

#endif  // CONVBOUNDS_MEASURE_HPP
