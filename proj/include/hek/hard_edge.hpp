#pragma once
// Hard-edge limiting kernels: the Bessel kernel in squared variables, the
// interpolating kernel S(x, y; g) of the strongly coupled limit mu = g/N
// (integrable form, literal double residue sum, diagonal), the residue
// moments of Bessel-J and the unfolded microscopic densities.

#include "hek/finite_kernel.hpp"
#include "hek/meijer.hpp"
#include "hek/numeric.hpp"

#include <array>
#include <utility>

namespace hek {

/// Residue-series truncation: stop once two consecutive terms past the peak
/// are below eps times every partial sum, or flag non-convergence at k_max.
struct Truncation {
    double eps = 1e-14;
    int k_max = 400;

    void validate() const;
};

struct InterpParams {
    int nu = 0;
    double g = 1.0;
    Truncation trunc;

    void validate() const;
};

/// Four residue series sharing one analytic exponent.
struct FourFunctions {
    std::array<ScaledReal, 4> v;
    double rel_err = 0.0;
    int terms = 0;
    long bits = 53;
    bool converged = true;
};

/// (t - s)(t^2 + s^2 + (t + s)(nu - 1) - nu)/4
double cal_p(double s, double t, int nu);
/// The same polynomial written through s(s+nu)(s+nu-1), s(s+nu) and t(t+nu);
/// this is the grouping that separates into the four Phi and F functions.
double cal_p_expanded(double s, double t, int nu);

/// Phi_i(x; g) = -sum_k (-1)^k w_i(k) x^k/(k! Gamma(k+nu+1)) I_k(x/2g),
/// w = 1, k, k(k+nu), k(k+nu)(k+nu-1).
FourFunctions phi_funcs(const InterpParams& p, double x);
/// As phi_funcs with I_{|k-1|} in place of I_k (diagonal of the kernel).
FourFunctions phi_funcs_shifted(const InterpParams& p, double x);
/// F_i(y; g) = -sum_k (-1)^k w_i(k) y^{k+nu}/(k! Gamma(k+nu+1)) K_{k+nu}(y/2g).
FourFunctions f_funcs(const InterpParams& p, double y);
/// F_i from Kummer-function Mellin-Barnes integrals on Re s = spec.offset in (0, 1).
/// Well conditioned for large g where the residue series cancels like e^{4g}.
FourFunctions f_funcs_mb(const InterpParams& p, double y, const MBQuadSpec& spec = {0.5, 0.05, 40.0});
/// Leading large-g form of F_1: -(1/2) line integral of Gamma(s+nu)Gamma(s)/Gamma(1-s) (y^2/4g)^{-s}.
double f1_large_g(const InterpParams& p, double y, const MBQuadSpec& spec = {0.5, 0.05, 40.0});

/// Above this g the kernel uses f_funcs_mb instead of the residue series.
constexpr double kMbSwitchG = 10.0;

/// S(x, y; g) from the integrable form, normalised as the limit of
/// N^{-2} K_N(x^2/4N^2, y^2/4N^2; g/N). Near the diagonal the value is taken
/// from interp_density at the midpoint times e^{(x-y)/2g}.
KernelEval interp_kernel_eval(const InterpParams& p, double x, double y);
double interp_kernel(const InterpParams& p, double x, double y);

/// Literal double residue sum with the polynomial P(s,t,nu) - g(s^2+t^2+nu s-st).
KernelEval interp_kernel_double_sum(const InterpParams& p, double x, double y);

/// S(x, x; g) from the double residue sum with I_{t-1}; I_{-1} = I_1.
KernelEval interp_density_eval(const InterpParams& p, double x);
double interp_density(const InterpParams& p, double x);

/// Bessel kernel in squared variables, J_{nu-1} form; diagonal below 1e-8 relative separation.
double bessel_kernel(int nu, double x, double y);
/// Equivalent form with -J_{nu+1} in place of J_{nu-1}.
double bessel_kernel_alt(int nu, double x, double y);
/// Diagonal of bessel_kernel: 2 (J_nu^2 - J_{nu+1} J_{nu-1})/x at argument 2 sqrt x.
double bessel_density(int nu, double x);
/// Double residue sum, via the Bessel-J moments, of the contour form of the
/// kappa > 1 limit in unsquared variables; evaluates to bessel_kernel(2 sqrt x, 2 sqrt y)/2.
double bessel_kernel_residue(int nu, double x, double y);

enum class MomentWeight { one, t, t_tnu, t_tnu_tnu1, t2, t2_tnu, t2_tnu_tnu1 };

/// sum_k (-1)^{k+1} w(k) xi^k/(k! Gamma(k+nu+1))
double residue_j_moment(int nu, MomentWeight w, double xi);
/// Bessel-J closed form of the same moment.
double residue_j_closed(int nu, MomentWeight w, double xi);

/// Residual of a vanishing double residue sum against its largest single term.
struct IdentityResidual {
    double residual = 0.0;
    double largest_term = 0.0;
    double relative() const { return largest_term > 0.0 ? std::fabs(residual) / largest_term : std::fabs(residual); }
};

/// which = 1, 2, 3 for the orders g, g^2, g^3 of the small-g expansion of the
/// I K product. as_printed = true uses the O(g^3) polynomial without the 1/2
/// on its first bracket, which does not vanish.
IdentityResidual identity_residual(int which, int nu, double x, bool as_printed = false);

/// x^3 S(x^2, x^2)/2 for the respective kernels, normalised so the Bessel
/// curve tends to 1/pi.
double rho_micro_bessel(int nu, double x);
double rho_micro_interp(const InterpParams& p, double x);

}  // namespace hek
