#ifndef CONVBOUNDS_ETA_HPP
#define CONVBOUNDS_ETA_HPP

#include <cstddef>
#include <vector>

#include "convbounds/approx.hpp"
#include "convbounds/family.hpp"

namespace convbounds {

enum class EtaMethod { exact, bound_general, bound_mean, bound_categorical, bound_symmetric };

const char* to_string(EtaMethod m);

/// Smoothed-difference statistics for one k.
struct EtaTerm {
    std::size_t k;
    double nu_k2;      ///< sum_j ||M_{j,k}||^2
    double nutilde_k;  ///< ||sum_j M_{j,k}||
};

struct EtaReport {
    double eta = 0.0;
    double alpha = 0.0;
    std::size_t ell = 0;
    EtaMethod method = EtaMethod::exact;
    std::vector<EtaTerm> per_k;  ///< k = 1..n, only for the exact method
};

/// Cap on the convolution work eta_exact is willing to do (atom pairs).
inline constexpr double kEtaExactWorkLimit = 2e8;

/// Estimated atom-pair work of eta_exact; compare against kEtaExactWorkLimit.
double eta_exact_workload(const ExpansionInput& input);

/**
 * eta_{ell,alpha} from M_{j,k} = (F_j - G) G^floor((n-k)/k), maximised over
 * k = ell+1..n. Throws std::length_error when the workload guard trips.
 */
EtaReport eta_exact(const ExpansionInput& input, std::size_t ell, double alpha = 0.0);

/// Re-maximise already computed per-k terms for another (ell, alpha).
double eta_from_terms(const std::vector<EtaTerm>& terms, std::size_t ell, double alpha);

/// Density-or-norm estimate with an arbitrary reference G.
EtaReport eta_bound_general(const ExpansionInput& input, std::size_t ell);

/// The same estimate specialised to G = mean of the factors.
EtaReport eta_bound_mean(const ExpansionInput& input, std::size_t ell);

/// Closed form for F_j = sum_r p_{j,r} H_r, valid for any atoms H_r.
EtaReport eta_bound_categorical(const CategoricalFamily& fam, std::size_t ell);

/// Bound on eta_{ell,1} for a symmetric family.
EtaReport eta1_bound_symmetric(const SymmetricFamily& fam, std::size_t ell);

}  // namespace convbounds

#endif  // CONVBOUNDS_ETA_HPP
