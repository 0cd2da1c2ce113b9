#ifndef CONVBOUNDS_FAMILY_HPP
#define CONVBOUNDS_FAMILY_HPP

#include <cstddef>
#include <vector>

#include "convbounds/approx.hpp"
#include "convbounds/measure.hpp"

namespace convbounds {

/// How the categories r = 0..d of a family are placed on a lattice.
enum class AtomMode {
    unit_vectors,  ///< H_0 = delta_0, H_r = delta_{e_r} on Z^d
    integer_line,  ///< H_r = delta_r on Z
};

/**
 * n categorical distributions over d+1 categories: row j holds p_{j,0..d}.
 * F_j = sum_r p_{j,r} H_r for atoms H_r supplied when the family is placed
 * on a lattice.
 */
class CategoricalFamily {
public:
    /// Rows must each sum to 1 within 1e-12 and every column mean must be
    /// positive.
    explicit CategoricalFamily(std::vector<std::vector<double>> rows);

    std::size_t n() const noexcept { return rows_.size(); }
    std::size_t d() const noexcept { return pbar_.size() - 1; }
    double p(std::size_t j, std::size_t r) const { return rows_[j][r]; }
    const std::vector<double>& row(std::size_t j) const { return rows_.at(j); }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    double pbar(std::size_t r) const { return pbar_.at(r); }
    const std::vector<double>& pbar() const noexcept { return pbar_; }

    std::vector<SignedMeasure> measures(AtomMode mode) const;
    std::vector<SignedMeasure> measures(const std::vector<SignedMeasure>& atoms) const;
    ExpansionInput to_expansion_input(AtomMode mode) const;

private:
    std::vector<std::vector<double>> rows_;
    std::vector<double> pbar_;
};

/// H_0..H_d for the given mode.
std::vector<SignedMeasure> category_atoms(AtomMode mode, std::size_t d);

/**
 * Symmetric finitely supported family
 * F_j = p_{j,0} delta_0 + sum_{r=1..b} p_{j,r} (delta_{-x_r} + delta_{x_r}).
 * Row j holds p_{j,0..b}; p_{j,0} + 2 sum_r p_{j,r} = 1.
 */
class SymmetricFamily {
public:
    SymmetricFamily(std::vector<std::vector<double>> rows, std::vector<LatticePoint> offsets);

    std::size_t n() const noexcept { return rows_.size(); }
    std::size_t b() const noexcept { return offsets_.size(); }
    double p(std::size_t j, std::size_t r) const { return rows_[j][r]; }
    double pbar(std::size_t r) const { return pbar_.at(r); }
    const std::vector<LatticePoint>& offsets() const noexcept { return offsets_; }

    std::vector<SignedMeasure> measures() const;
    ExpansionInput to_expansion_input() const;

private:
    std::vector<std::vector<double>> rows_;
    std::vector<LatticePoint> offsets_;
    std::vector<double> pbar_;
};

}  // namespace convbounds

#endif  // CONVBOUNDS_FAMILY_HPP
