#include "convbounds/family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace convbounds {

namespace {

std::vector<double> column_means(const std::vector<std::vector<double>>& rows) {
    std::vector<CompensatedSum> sums(rows.front().size());
    for (const auto& row : rows)
        for (std::size_t r = 0; r < row.size(); ++r) sums[r].add(row[r]);
    std::vector<double> out;
    for (const auto& s : sums) out.push_back(s.value() / static_cast<double>(rows.size()));
    return out;
}

}  // namespace

CategoricalFamily::CategoricalFamily(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("family needs at least one row");
    const std::size_t width = rows_.front().size();
    if (width < 2) throw std::invalid_argument("family needs d >= 1");
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        if (rows_[j].size() != width) throw std::invalid_argument("ragged probability matrix");
        CompensatedSum s;
        for (double p : rows_[j]) {
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
            s.add(p);
        }
        if (std::abs(s.value() - 1.0) > 1e-12)
            throw std::invalid_argument("row " + std::to_string(j + 1) + " does not sum to 1");
    }
    pbar_ = column_means(rows_);
    for (std::size_t r = 0; r < pbar_.size(); ++r)
        if (!(pbar_[r] > 0.0))
            throw std::invalid_argument("category " + std::to_string(r) + " has zero mean probability");
}

std::vector<SignedMeasure> category_atoms(AtomMode mode, std::size_t d) {
    std::vector<SignedMeasure> atoms;
    atoms.reserve(d + 1);
    for (std::size_t r = 0; r <= d; ++r) {
        if (mode == AtomMode::integer_line)
            atoms.push_back(delta(LatticePoint{static_cast<std::int64_t>(r)}));
        else
            atoms.push_back(r == 0 ? identity(d) : delta(LatticePoint::unit(d, r - 1)));
    }
    return atoms;
}

std::vector<SignedMeasure> CategoricalFamily::measures(const std::vector<SignedMeasure>& atoms) const {
    if (atoms.size() != d() + 1) throw std::invalid_argument("need one atom per category");
    std::vector<SignedMeasure> out;
    out.reserve(n());
    for (const auto& row : rows_) {
        std::vector<Term> terms;
        for (std::size_t r = 0; r <= d(); ++r)
            if (row[r] != 0.0) terms.push_back({row[r], &atoms[r]});
        out.push_back(linear_combine(terms));
    }
    return out;
}

std::vector<SignedMeasure> CategoricalFamily::measures(AtomMode mode) const {
    return measures(category_atoms(mode, d()));
}

ExpansionInput CategoricalFamily::to_expansion_input(AtomMode mode) const {
    return ExpansionInput(measures(mode));
}

SymmetricFamily::SymmetricFamily(std::vector<std::vector<double>> rows, std::vector<LatticePoint> offsets)
    : rows_(std::move(rows)), offsets_(std::move(offsets)) {
    if (rows_.empty()) throw std::invalid_argument("family needs at least one row");
    if (offsets_.empty()) throw std::invalid_argument("symmetric family needs b >= 1 offsets");
    const std::size_t dim = offsets_.front().dimension();
    for (std::size_t r = 0; r < offsets_.size(); ++r) {
        if (offsets_[r].dimension() != dim) throw DimensionMismatch(dim, offsets_[r].dimension());
        if (offsets_[r] == LatticePoint::origin(dim)) throw std::invalid_argument("offsets must be nonzero");
        for (std::size_t q = 0; q < r; ++q)
            if (offsets_[q] == offsets_[r] || offsets_[q] == -offsets_[r])
                throw std::invalid_argument("offsets must be pairwise distinct up to sign");
    }
    for (const auto& row : rows_) {
        if (row.size() != offsets_.size() + 1) throw std::invalid_argument("row width must be b + 1");
        CompensatedSum s;
        s.add(row[0]);
        for (std::size_t r = 0; r < row.size(); ++r) {
            if (!(row[r] >= 0.0 && row[r] <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
            if (r > 0) s.add(2.0 * row[r]);
        }
        if (std::abs(s.value() - 1.0) > 1e-12)
            throw std::invalid_argument("symmetric row does not satisfy p0 + 2 sum p_r = 1");
    }
    pbar_ = column_means(rows_);
    for (double pb : pbar_)
        if (!(pb > 0.0)) throw std::invalid_argument("symmetric family has a zero mean probability");
}

std::vector<SignedMeasure> SymmetricFamily::measures() const {
    const std::size_t dim = offsets_.front().dimension();
    std::vector<SignedMeasure> out;
    for (const auto& row : rows_) {
        MeasureBuilder mb(dim);
        mb.add(LatticePoint::origin(dim), row[0]);
        for (std::size_t r = 1; r < row.size(); ++r) {
            mb.add(offsets_[r - 1], row[r]);
            mb.add(-offsets_[r - 1], row[r]);
        }
        out.push_back(std::move(mb).build());
    }
    return out;
}

ExpansionInput SymmetricFamily::to_expansion_input() const { return ExpansionInput(measures()); }

}  // namespace convbounds
