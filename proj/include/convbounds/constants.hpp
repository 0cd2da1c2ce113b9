#ifndef CONVBOUNDS_CONSTANTS_HPP
#define CONVBOUNDS_CONSTANTS_HPP

#include <map>

namespace convbounds {

/// h(x) = ln(2 - (1 - x) e^x) / x^2 on (0, inf).
double h_function(double x);

/// The integral in h'(x) = x^-3 * int_0^x t^2 (2e^-t - 1) / (2e^-t - 1 + t)^2 dt.
/// Its sign is the sign of h'(x).
double h_derivative_integral(double x);

struct C1Result {
    double c1;  ///< sup of h over (0, inf)
    double x0;  ///< the maximizer
};

/// Locates the unique zero of h' by bisection on the sign of the integral
/// form, then evaluates h there.
C1Result compute_c1();

/// 2 e c1, the scale appearing in every threshold and constant.
double two_e_c1();

/// Unique root in (0,1) of x^(ell+1) + x/2 = 1.
double x_ell(int ell);
/// Unique root in (0,1) of x^(ell+1) - x^2/2 + x = 1.
double xtilde_ell(int ell);

/// (2ec1)^((ell+1)/2) / (1 - x_ell), valid for any eta_0.
double u_ell(int ell);

/// Upper envelope zeta_ell(x) for ell in {1,2,3}, x in [0, 1/(2ec1)).
double zeta(int ell, double x);
/// Right-hand side (2 - 2t + t^2 - t^(ell+1)) / (1 - t), t = sqrt(2ec1 s).
double trivial_envelope(int ell, double s);
/// Crossing point of zeta_ell with the trivial envelope, ell in {1,2,3}.
double s_ell(int ell);

/// Constant for the mean-centred bound without eta threshold; ell >= 1.
double utilde_ell(int ell);

/// Round x up to `decimals` places.
double round_up(double x, int decimals);

/// Which value of u_ell / utilde_ell a bound should use.
enum class ConstantMode {
    computed,   ///< the value from the root finders
    published,  ///< rounded up to the customary printed precision
};

/// u_ell rounded up to one decimal (5.9, 17.3, 44.5, 107.5 for ell <= 3).
double u_ell_published(int ell);
/// utilde_1 rounded up to two decimals, utilde_ell to one decimal otherwise.
double utilde_ell_published(int ell);

double u_ell(int ell, ConstantMode mode);
double utilde_ell(int ell, ConstantMode mode);

/// Every constant evaluated once; shared read-only.
struct ConstantsTable {
    double c1;
    double x0;
    std::map<int, double> x_ell;
    std::map<int, double> xtilde_ell;
    std::map<int, double> u_ell;
    std::map<int, double> utilde_ell;
    std::map<int, double> s_ell;
    std::map<int, double> zeta_at_s;

    /// ell ranges 0..max_ell for u, 1..max_ell for utilde, 1..3 for s.
    static ConstantsTable compute(int max_ell = 8);
};

/// Lazily computed table with max_ell = 8.
const ConstantsTable& constants();

}  // namespace convbounds

#endif  // CONVBOUNDS_CONSTANTS_HPP
