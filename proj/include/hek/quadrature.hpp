#pragma once
// Adaptive Gauss-Kronrod wrappers (Boost) for finite intervals and the half line.

#include <functional>
#include <vector>

namespace hek {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    bool converged = true;
};

using RealFn = std::function<double(double)>;

/// Adaptive G7/K15 on [a, b]; tol is relative to the integral.
QuadResult integrate(const RealFn& f, double a, double b, double tol = 1e-12, unsigned max_depth = 18);

/// Sum of integrate() over consecutive breakpoints.
QuadResult integrate_pieces(const RealFn& f, const std::vector<double>& points, double tol = 1e-12);

/// Integral over (0, inf) of an integrand decaying at least like exp(-c sqrt(x)).
/// Uses x = t^2 and doubling panels until two consecutive panels are negligible.
QuadResult integrate_half_line(const RealFn& f, double tol = 1e-12, double scale = 1.0);

}  // namespace hek
