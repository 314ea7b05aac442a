#pragma once
// Mellin-Barnes quadrature and the comparison kernels of the independent
// product (Meijer G-kernel, finite and limiting) and of the Muttalib-Borodin
// ensemble (Wright-Bessel kernel).

#include "hek/numeric.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace hek {

using cplx = std::complex<double>;

/// Trapezoid rule on the line Re s = offset, |Im s| <= cutoff, step h.
struct MBQuadSpec {
    double offset = -0.5;
    double step = 0.05;
    double cutoff = 40.0;

    void validate() const;
};

struct LineResult {
    cplx value;
    double tail = 0.0;  // |integrand| at the cutoff relative to the accumulated magnitude
    int nodes = 0;
};

/// (1/2 pi i) * integral of f(s) ds over the vertical line described by spec.
LineResult mb_line_integral(const std::function<cplx(cplx)>& f, const MBQuadSpec& spec);

/// (1/2 pi i) * integral over the parabola s = c - tau^2 + i tau, |tau| <= tau_max.
/// Encloses every pole left of c; used where the vertical line diverges.
LineResult mb_loop_integral(const std::function<cplx(cplx)>& f, double c, double step, double tau_max);

/// Evaluation with diagnostics shared by the quadrature-based kernels.
struct MeijerEval {
    double value = 0.0;
    double imag_residual = 0.0;  // |Im| / |value| of a nominally real result
    double tail = 0.0;
    int terms = 0;
    bool converged = true;
};

/// G^{m,0}_{0,q}(b | z) on a vertical line; needs 2m > q. The offset must lie right
/// of every pole -b_j - k (j < m); a nan offset picks 1/2 - min b_j.
double meijer_g(int m, const std::vector<double>& b, double z, const MBQuadSpec& spec = {NAN, 0.05, 40.0});

/// G^{1,0}_{0,3}(b1, b2, b3 | z) by its convergent power series.
double meijer_g_103(double b1, double b2, double b3, double z);
/// Same function by quadrature on a loop around the poles of Gamma(b1 + s).
double meijer_g_103_contour(double b1, double b2, double b3, double z, double step = 0.05);
/// G^{2,0}_{0,3}(b1, b2, b3 | z) by vertical-line quadrature.
double meijer_g_203(double b1, double b2, double b3, double z, const MBQuadSpec& spec = {NAN, 0.05, 40.0});

/// Hard-edge kernel S^Ind_{nu1,nu2}(x, y) of the product of two independent
/// matrices: residue sum in t, vertical line in s.
MeijerEval meijer_kernel_eval(double nu1, double nu2, double x, double y, const MBQuadSpec& spec = {},
                              double eps = 1e-14, int k_max = 400);
double meijer_kernel(double nu1, double nu2, double x, double y);

/// The same kernel as an integral over u in [0, 1] of G^{1,0}_{0,3}(ux) G^{2,0}_{0,3}(uy).
double meijer_kernel_u_integral(double nu1, double nu2, double x, double y, double tol = 1e-11);

/// Finite-N kernel of the independent product. The t-residues collapse the
/// s-integrand to a polynomial times Gamma functions, giving an exact finite
/// sum of K-Bessel functions; evaluated with adaptive precision.
double finite_independent_kernel(int n_size, int nu, double x, double y);
/// Cross-check: t-residues summed under a vertical-line s-quadrature (small N only).
double finite_independent_kernel_line(int n_size, int nu, double x, double y, const MBQuadSpec& spec = {});

/// Hard-edge kernel of the Muttalib-Borodin ensemble, K^{(alpha, theta)}(x, y) as a u-integral of Wright functions.
MeijerEval borodin_kernel_eval(double alpha, double theta, double x, double y, double tol = 1e-10);
double borodin_kernel(double alpha, double theta, double x, double y);

/// Unfolded density normalised to the asymptotic value 1/pi.
double rho_micro_mb(double alpha, double theta, double x);

}  // namespace hek
