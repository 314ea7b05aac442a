#pragma once
// Exact finite-N quantities for the squared singular values of X1 X2 with
// coupled Gaussian factors: biorthogonal functions P_n, Q_n, the correlation
// kernel in sum and Christoffel-Darboux form, joint densities, the Laguerre
// kernel and the polynomial A_N(s, t; mu).

#include "hek/numeric.hpp"

#include <vector>

namespace hek {

struct CoupledParams {
    int n_size = 1;   // N
    int nu = 0;       // M - N
    double mu = 0.5;  // coupling, strictly inside (0, 1)

    void validate() const;
};

/// Coefficients of x P_n expanded in neighbouring P's (a_{-2,n}, a_{-1,n}, a_{1,n}, a_{2,n}).
struct CDCoeffs {
    double a_m2 = 0.0;
    double a_m1 = 0.0;
    double a_p1 = 0.0;
    double a_p2 = 0.0;
};

/// Kernel value with the diagnostics of the adaptive evaluation.
struct KernelEval {
    double value = 0.0;
    double rel_err = 0.0;
    long bits = 53;
    bool converged = true;
};

CDCoeffs cd_coeffs(const CoupledParams& p, int n);

ScaledReal p_n(const CoupledParams& p, int n, double x);
ScaledReal q_n(const CoupledParams& p, int n, double y);

/// P_0..P_nmax at x and Q_0..Q_nmax at y in one pass each.
std::vector<ScaledReal> p_table(const CoupledParams& p, int nmax, double x);
std::vector<ScaledReal> q_table(const CoupledParams& p, int nmax, double y);

/// K_N(x, y) e^{gauge}; the gauge exponent is folded in before exponentiation.
KernelEval kernel_eval(const CoupledParams& p, double x, double y, double gauge = 0.0);
double kernel(const CoupledParams& p, double x, double y, double gauge = 0.0);

/// Christoffel-Darboux form; falls back to the sum form when |x - y| < 1e-6 max(x, y).
KernelEval kernel_cd_eval(const CoupledParams& p, double x, double y, double gauge = 0.0);
double kernel_cd(const CoupledParams& p, double x, double y, double gauge = 0.0);

double kernel_diag(const CoupledParams& p, double y);

double joint_density(const CoupledParams& p, const std::vector<double>& ys);
double independent_joint_density(int n_size, int nu, const std::vector<double>& ys);

/// Laguerre-ensemble kernel in the variables y = v^2/4, including the conjugation
/// factor e^{(sqrt x - sqrt y)/mu}; gauge is added to that exponent.
double laguerre_kernel(int n_size, int nu, double x, double y, double mu, double gauge = 0.0);
double laguerre_kernel_cd(int n_size, int nu, double x, double y, double mu, double gauge = 0.0);

/// A_N(s, t; mu); throws DomainError at s = N + 1 or t = N + 1.
double a_n_poly(double s, double t, const CoupledParams& p);

}  // namespace hek
