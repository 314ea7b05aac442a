#pragma once
// Scalar special functions: gamma, modified Bessel I/K (exponentially scaled),
// Bessel J, Wright's generalised Bessel function, Laguerre polynomials and the
// confluent hypergeometric function M(a;b|x).

#include "hek/numeric.hpp"

#include <algorithm>
#include <complex>
#include <vector>

namespace hek {

/// Value of a truncated series with its truncation diagnostics.
struct SeriesResult {
    double value = 0.0;
    double tail_bound = 0.0;  // bound on the discarded tail
    int terms = 0;
    bool converged = true;
};

double ln_gamma(double x);
std::complex<double> ln_gamma(std::complex<double> z);

/// e^{-x} I_n(x)
double bessel_i_scaled(int n, double x);
/// e^{x} K_n(x)
double bessel_k_scaled(int n, double x);
/// J_nu(x) for nu > -1; bessel_j_any also accepts negative integer orders.
double bessel_j(double nu, double x);
double bessel_j_any(double nu, double x);

SeriesResult wright_bessel_series(double a, double b, double x, double eps_rel = 1e-15);
double wright_bessel(double a, double b, double x);

double laguerre(int n, double nu, double x);

/// M(a;b|x); throws DomainError when b is a nonpositive integer.
double kummer_m(double a, double b, double x);
std::complex<double> kummer_m(std::complex<double> a, double b, double x);
/// M(a;b|x)/Gamma(b), finite for every b.
std::complex<double> kummer_m_regularized(std::complex<double> a, double b, double x);

// ---------------------------------------------------------------- templates

namespace detail {

/// log I_k(z) from the uniform large-order approximation; only used to pick
/// recurrence start orders.
inline double log_bessel_i_estimate(double k, double z) {
    if (z <= 0.0) return k == 0.0 ? 0.0 : -1e300;
    double r = std::sqrt(k * k + z * z);
    return r - k * std::asinh(k / z) - 0.5 * std::log(2.0 * kPi * r);
}

inline int miller_start(int kmax, double z, long bits) {
    double base = std::max<double>(kmax, z);
    int m = static_cast<int>(base) + 20 + static_cast<int>(std::ceil(std::sqrt(40.0 * base)));
    double target = -0.5 * static_cast<double>(bits) * kLn2 - 20.0;
    double ref = log_bessel_i_estimate(kmax, z);
    while (log_bessel_i_estimate(m, z) - ref > target) m += std::max(10, m / 4);
    return m;
}

template <class Real> inline long precision_bits();
template <> inline long precision_bits<double>() { return 53; }
template <> inline long precision_bits<Mpf>() { return working_bits(); }

}  // namespace detail

/// out[k] = e^{-z} I_k(z), k = 0..kmax, by Miller's downward recurrence
/// normalised with 1 = e^{-z}(I_0 + 2 sum I_k).
template <class Real>
void bessel_i_scaled_array(int kmax, const Real& z, std::vector<Wide<Real>>& out) {
    using W = Wide<Real>;
    out.assign(kmax + 1, W(0.0));
    if (is_zero(z)) { out[0] = W(1.0); return; }
    const int m = detail::miller_start(kmax, to_double(z), detail::precision_bits<Real>());
    W fnext(0.0), f(1.0), sum(0.0);
    const Real two_over_z = Real(2.0) / z;
    for (int k = m; k >= 1; --k) {
        W fprev = fnext + f * W(two_over_z * Real(static_cast<double>(k)));
        if (k <= kmax) out[k] = f;
        sum += f;
        fnext = f;
        f = fprev;
    }
    out[0] = f;
    W norm = f + sum * 2.0;
    for (auto& v : out) v /= norm;
}

/// e^{x} K_0(x) and e^{x} K_1(x) for x > 0.
template <class Real>
void bessel_k01_scaled(const Real& x, Real& k0, Real& k1) {
    using std::exp; using std::log; using std::sqrt; using std::fabs;
    if (!(x > Real(0.0))) throw DomainError("bessel_k: argument must be positive");
    const double u = unit_roundoff<Real>();
    if (x <= Real(2.0)) {
        const Real t = x * x / 4.0;
        const Real gamma_e = const_euler<Real>();
        Real term(1.0), i0(1.0), ks0(0.0), harm(0.0);
        Real term1(1.0), i1s(1.0), ks1 = Real(-2.0) * gamma_e + 1.0;  // psi(1)+psi(2) = -2g + 1
        Real harm1(1.0);  // H_{k+1}
        for (int k = 1; k < 10000; ++k) {
            const double kd = k;
            term *= t / (kd * kd);
            harm += Real(1.0) / kd;
            i0 += term;
            ks0 += term * harm;
            term1 *= t / (kd * (kd + 1.0));
            // psi(k+1)+psi(k+2) = -2g + H_k + H_{k+1}
            const Real hk = harm;
            harm1 = harm + Real(1.0) / (kd + 1.0);
            i1s += term1;
            ks1 += term1 * (Real(-2.0) * gamma_e + hk + harm1);
            if (fabs(to_double(term)) < u * 1e-3 && fabs(to_double(term1)) < u * 1e-3) break;
        }
        const Real lx = log(x / 2.0);
        const Real i1 = x / 2.0 * i1s;
        const Real K0 = -(lx + gamma_e) * i0 + ks0;
        const Real K1 = Real(1.0) / x + i1 * lx - x / 4.0 * ks1;
        const Real ex = exp(x);
        k0 = K0 * ex;
        k1 = K1 * ex;
        return;
    }
    // Steed/Temme continued fraction CF2 at order 0.
    Real b = Real(2.0) * (x + 1.0);
    Real d = Real(1.0) / b;
    Real h = d, delh = d;
    Real q1(0.0), q2(1.0);
    const Real a1(0.25);
    Real q = a1, c = a1, a = -a1;
    Real s = Real(1.0) + q * delh;
    for (int i = 1; i < 1000000; ++i) {
        a -= Real(2.0 * i);
        c = -a * c / (i + 1.0);
        Real qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = Real(1.0) / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        Real dels = q * delh;
        s += dels;
        if (fabs(to_double(dels / s)) < u * 0.25) break;
    }
    h = a1 * h;
    k0 = sqrt(const_pi<Real>() / (Real(2.0) * x)) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

/// out[k] = e^{z} K_k(z), k = 0..kmax, by upward recurrence from K_0, K_1.
template <class Real>
void bessel_k_scaled_array(int kmax, const Real& z, std::vector<Wide<Real>>& out) {
    using W = Wide<Real>;
    Real k0, k1;
    bessel_k01_scaled(z, k0, k1);
    out.assign(kmax + 1, W(0.0));
    out[0] = W(k0);
    if (kmax >= 1) out[1] = W(k1);
    const Real two_over_z = Real(2.0) / z;
    for (int k = 1; k < kmax; ++k) out[k + 1] = out[k - 1] + out[k] * W(two_over_z * Real(static_cast<double>(k)));
}

/// Coefficients 1/(j! Gamma(a + b j)) of the Wright function, reusable across
/// many arguments (the u-integral of the Borodin kernel).
template <class Real>
class WrightSeries {
public:
    WrightSeries(double a, double b) : a_(a), b_(b) {}

    /// J_{a,b}(x) with running magnitude. Stops past the term peak once
    /// |term| < eps |partial sum| on two consecutive terms (at least 10 terms).
    Tracked<Real> eval(const Real& x, double eps, double* tail_bound = nullptr, int* terms_used = nullptr) {
        using std::fabs; using std::abs;
        Real sum(0.0), mag(0.0), p(1.0);
        const Real mx = -x;
        const double xd = std::fabs(to_double(x));
        double prev = 0.0;
        int quiet = 0;
        for (int j = 0;; ++j) {
            ensure(j);
            Real t = p * coef_[j];
            sum += t;
            mag += abs(t);
            const double td = fabs(to_double(t));
            const double jd = j + 1.0;
            const bool past_peak = jd * std::pow(std::max(b_ * jd + a_, 1.0), b_) > 2.0 * xd;
            if (j >= 9 && past_peak && td <= eps * fabs(to_double(sum))) ++quiet;
            else quiet = 0;
            if (quiet >= 2 || (j >= 9 && past_peak && td == 0.0 && prev == 0.0)) {
                if (tail_bound) {
                    double r = prev > 0.0 ? std::min(td / prev, 0.5) : 0.5;
                    *tail_bound = td * r / (1.0 - r);
                }
                if (terms_used) *terms_used = j + 1;
                break;
            }
            if (j > 200000) throw std::runtime_error("wright series did not converge");
            prev = td;
            p *= mx;
        }
        return {sum, mag};
    }

private:
    void ensure(int j) {
        while (static_cast<int>(coef_.size()) <= j) {
            const int n = static_cast<int>(coef_.size());
            const double arg = a_ + b_ * n;
            Real c(0.0);
            bool pole = arg <= 0.0 && std::floor(arg) == arg;
            if (!pole) {
                using std::exp;
                Real ra = Real(a_) + Real(b_) * Real(static_cast<double>(n));
                // sign of Gamma for negative non-integer arguments
                int sgn = 1;
                if (arg < 0.0) sgn = (static_cast<long>(std::floor(arg)) % 2 == 0) ? 1 : -1;
                c = exp(-(lgam(ra) + lgam(Real(static_cast<double>(n) + 1.0))));
                if (sgn < 0) c = -c;
            }
            coef_.push_back(c);
        }
    }
    double a_, b_;
    std::vector<Real> coef_;
};

}  // namespace hek
