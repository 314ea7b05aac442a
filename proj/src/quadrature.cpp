#include "hek/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace hek {

QuadResult integrate(const RealFn& f, double a, double b, double tol, unsigned max_depth) {
    QuadResult r;
    double err = 0.0, l1 = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol, &err, &l1);
    r.error = err;
    r.converged = err <= std::max(tol * std::fabs(r.value), tol * 1e-3 * l1) * 10.0 || err < 1e-300;
    return r;
}

QuadResult integrate_pieces(const RealFn& f, const std::vector<double>& points, double tol) {
    QuadResult total;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        QuadResult r = integrate(f, points[i], points[i + 1], tol);
        total.value += r.value;
        total.error += r.error;
        total.converged = total.converged && r.converged;
    }
    return total;
}

QuadResult integrate_half_line(const RealFn& f, double tol, double scale) {
    // x = t^2 turns exp(-c sqrt x) into exp(-c t); panels in t: [0,s],[s,2s],[2s,4s],...
    auto g = [&](double t) { return 2.0 * t * f(t * t); };
    const double s = std::sqrt(scale);
    QuadResult total = integrate(g, 0.0, s, tol);
    double lo = s;
    int quiet = 0;
    for (int i = 0; i < 60 && quiet < 2; ++i) {
        const double hi = lo + s * std::pow(2.0, std::min(i, 6));
        QuadResult r = integrate(g, lo, hi, tol);
        total.value += r.value;
        total.error += r.error;
        total.converged = total.converged && r.converged;
        if (std::fabs(r.value) <= tol * 1e-2 * std::fabs(total.value)) ++quiet;
        else quiet = 0;
        lo = hi;
    }
    if (quiet < 2) total.converged = false;
    return total;
}

}  // namespace hek
