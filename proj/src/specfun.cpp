#include "hek/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace hek {

using cplx = std::complex<double>;

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

// Lanczos (g = 7, n = 9); reflection for Re z < 1/2.
cplx ln_gamma(cplx z) {
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        cplx s = std::sin(kPi * z);
        return std::log(kPi) - std::log(s) - ln_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double bessel_i_scaled(int n, double x) {
    if (n < 0) n = -n;
    if (x < 0.0) throw DomainError("bessel_i_scaled: argument must be nonnegative");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x < n) {
        // direct series, leading term in log form
        const double lead = n * std::log(x / 2.0) - std::lgamma(n + 1.0) - x;
        const double t = x * x / 4.0;
        double term = 1.0, sum = 1.0;
        for (int m = 1; m < 10000; ++m) {
            term *= t / (m * static_cast<double>(m + n));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::exp(lead) * sum;
    }
    std::vector<Xd> a;
    bessel_i_scaled_array<double>(n, x, a);
    return to_double(a[n]);
}

double bessel_k_scaled(int n, double x) {
    if (n < 0) n = -n;
    if (!(x > 0.0)) throw DomainError("bessel_k_scaled: argument must be positive");
    std::vector<Xd> a;
    bessel_k_scaled_array<double>(n, x, a);
    return to_double(a[n]);
}

namespace {

double bessel_j_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double lead = nu * std::log(x / 2.0) - std::lgamma(nu + 1.0);
    const double t = -x * x / 4.0;
    double term = 1.0, sum = 1.0, mag = 1.0;
    for (int m = 1; m < 10000; ++m) {
        term *= t / (m * (m + nu));
        sum += term;
        mag += std::fabs(term);
        if (std::fabs(term) < 1e-18 * mag && m > x / 2.0) break;
    }
    double sgn = 1.0;
    if (nu + 1.0 < 0.0 && static_cast<long>(std::floor(nu + 1.0)) % 2 != 0) sgn = -1.0;
    return sgn * std::exp(lead) * sum;
}

// Hankel expansion for J_mu(x), small mu, large x; truncated at the smallest term.
double bessel_j_hankel(double mu, double x) {
    const double m4 = 4.0 * mu * mu;
    double p = 0.0, q = 0.0;
    double term = 1.0;  // a_k(mu) / x^k
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            const double f = (m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
            term *= f;
        }
        const double at = std::fabs(term);
        if (at > last) break;
        last = at;
        // (-1)^{floor(k/2)} sign pattern for P (even k) and Q (odd k)
        const double s = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) p += s * term;
        else q += s * term;
        if (at < 1e-17) break;
    }
    const double chi = x - (0.5 * mu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
    if (!(nu > -1.0)) throw DomainError("bessel_j: order must exceed -1");
    if (x < 0.0) throw DomainError("bessel_j: argument must be nonnegative");
    if (x <= 12.0 || nu >= x) return bessel_j_series(nu, x);
    const double mu0 = nu - std::floor(nu);
    double jm = bessel_j_hankel(mu0, x);
    if (nu == mu0) return jm;
    double j = bessel_j_hankel(mu0 + 1.0, x);
    for (double m = mu0 + 1.0; m < nu - 0.5; m += 1.0) {
        const double jn = 2.0 * m / x * j - jm;
        jm = j;
        j = jn;
    }
    return j;
}

double bessel_j_any(double nu, double x) {
    if (nu > -1.0) return bessel_j(nu, x);
    if (std::floor(nu) == nu) {
        const long n = static_cast<long>(-nu);
        return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(static_cast<double>(n), x);
    }
    // non-integer negative order: J_nu = (2(nu+1)/x) J_{nu+1} - J_{nu+2}
    return 2.0 * (nu + 1.0) / x * bessel_j_any(nu + 1.0, x) - bessel_j_any(nu + 2.0, x);
}

SeriesResult wright_bessel_series(double a, double b, double x, double eps_rel) {
    if (!(b > 0.0)) throw DomainError("wright_bessel: b must be positive");
    if (x < 0.0) throw DomainError("wright_bessel: x must be nonnegative");
    SeriesResult r;
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        WrightSeries<Real> ws(a, b);
        double tail = 0.0;
        int terms = 0;
        Tracked<Real> t = ws.eval(Real(x), eps_rel, &tail, &terms);
        r.tail_bound = tail;
        r.terms = terms;
        return std::make_pair(to_double(t.v), rel_error<Real>(t));
    });
    r.value = res.value;
    r.converged = res.converged;
    return r;
}

double wright_bessel(double a, double b, double x) { return wright_bessel_series(a, b, x).value; }

double laguerre(int n, double nu, double x) {
    if (n < 0) throw DomainError("laguerre: degree must be nonnegative");
    double l0 = 1.0;
    if (n == 0) return l0;
    double l1 = 1.0 + nu - x;
    for (int k = 1; k < n; ++k) {
        const double l2 = ((2.0 * k + 1.0 + nu - x) * l1 - (k + nu) * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

namespace {

bool nonpositive_integer(double b) { return b <= 0.0 && std::floor(b) == b; }

// Power series of M(a;b|x). Terms past the peak are summed until negligible.
cplx kummer_series(cplx a, double b, double x) {
    cplx term = 1.0, sum = 1.0;
    double mag = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= (a + static_cast<double>(k)) / (b + k) * x / (k + 1.0);
        sum += term;
        mag += std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(a) + std::fabs(x)) break;
        if (term == 0.0) break;
    }
    return sum;
}

// Large negative x: M ~ Gamma(b)/Gamma(b-a) X^{-a} sum_s (a)_s (a-b+1)_s / s! X^{-s}, X = -x.
// Returns false when the asymptotic series cannot reach the target accuracy.
bool kummer_asymptotic(cplx a, double b, double x, cplx& out) {
    const double X = -x;
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    bool ok = false;
    for (int s = 0; s < 500; ++s) {
        term *= (a + static_cast<double>(s)) * (a - b + 1.0 + static_cast<double>(s)) / ((s + 1.0) * X);
        const double at = std::abs(term);
        if (at > last) break;
        sum += term;
        last = at;
        if (at < 1e-17 * std::abs(sum)) { ok = true; break; }
    }
    if (!ok) return false;
    // the neglected exponentially small part is ~ e^{-X}
    if (std::exp(-X) > 1e-17) return false;
    out = std::exp(ln_gamma(cplx(b)) - ln_gamma(b - a) - a * std::log(X)) * sum;
    return true;
}

}  // namespace

cplx kummer_m(cplx a, double b, double x) {
    if (nonpositive_integer(b)) throw DomainError("kummer_m: b must not be a nonpositive integer");
    if (x == 0.0) return 1.0;
    if (x >= 0.0) return kummer_series(a, b, x);
    if (x < -30.0) {
        cplx r;
        if (kummer_asymptotic(a, b, x, r)) return r;
    }
    // Kummer transformation M(a;b|x) = e^x M(b-a;b|-x): positive argument, no cancellation
    if (x > -700.0) return std::exp(x) * kummer_series(b - a, b, -x);
    cplx r;
    if (kummer_asymptotic(a, b, x, r)) return r;
    throw std::runtime_error("kummer_m: argument outside the supported range");
}

double kummer_m(double a, double b, double x) { return kummer_m(cplx(a), b, x).real(); }

cplx kummer_m_regularized(cplx a, double b, double x) {
    if (!nonpositive_integer(b)) return kummer_m(a, b, x) / std::exp(ln_gamma(cplx(b)));
    // b = -n: M(a;b|x)/Gamma(b) = (a)_{n+1} x^{n+1}/(n+1)! M(a+n+1; n+2 | x)
    const int n = static_cast<int>(-b);
    cplx poch = 1.0;
    for (int i = 0; i <= n; ++i) poch *= a + static_cast<double>(i);
    const double fact = std::exp(std::lgamma(n + 2.0));
    return poch * std::pow(x, n + 1) / fact * kummer_m(a + static_cast<double>(n + 1), n + 2.0, x);
}

}  // namespace hek
