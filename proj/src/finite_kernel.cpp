#include "hek/finite_kernel.hpp"

#include "hek/specfun.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

namespace hek {

void CoupledParams::validate() const {
    if (n_size < 1) throw DomainError("n_size must be >= 1");
    if (nu < 0) throw DomainError("nu must be >= 0");
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie strictly inside (0, 1)");
}

namespace {

template <class Real>
using TW = Tracked<Wide<Real>>;

// Coefficients in the working precision; they multiply cancelling terms in the
// Christoffel-Darboux numerator, so rounding them to double is not an option.
template <class Real>
std::array<Real, 4> cd_coeffs_t(double mu_d, int nu_i, int n_i) {
    const Real mu(mu_d), nu(static_cast<double>(nu_i)), n(static_cast<double>(n_i));
    const Real om = (Real(1.0) - mu) * (Real(1.0) - mu);
    std::array<Real, 4> a;  // a_m2, a_m1, a_p1, a_p2
    a[3] = om / (Real(4.0) * (n + 2.0) * (n + 1.0));
    a[2] = mu + om * (n * 2.0 + nu + 2.0) / ((n + 1.0) * 2.0);
    a[1] = mu * n * n * (n + nu) * (n * 3.0 + nu) + om / 2.0 * n * n * (nu + n * 2.0) * (nu + n);
    a[0] = mu * n * n * (n - 1.0) * (n - 1.0) * (n + nu) * (n + nu - 1.0) +
           om / 4.0 * (nu + n) * (nu + n - 1.0) * n * n * (n - 1.0) * (n - 1.0);
    return a;
}

// p~_n = (-1)^n (nu+n)! (n!)^2 / nu! * sum_k (-n)_k/((nu+1)_k k!) ... with the
// common factor e^{z} mu^{-1/2} stripped; z = (1-mu) sqrt(x)/mu is returned.
template <class Real>
void p_core(const CoupledParams& pr, int nmax, double x, std::vector<TW<Real>>& out, Real& z) {
    using std::sqrt;
    using W = Wide<Real>;
    const Real mu(pr.mu);
    const Real sx = sqrt(Real(x));
    z = (Real(1.0) - mu) * sx / mu;
    const Real c = Real(2.0) * sx / (Real(1.0) - mu);
    std::vector<W> ik;
    bessel_i_scaled_array<Real>(nmax, z, ik);
    std::vector<W> a(nmax + 1), invf(nmax + 1);
    W coef(1.0);
    invf[0] = W(1.0);
    for (int k = 0; k <= nmax; ++k) {
        if (k > 0) {
            coef = coef * W(c / Real(static_cast<double>(pr.nu + k) * k));
            invf[k] = invf[k - 1] / W(Real(static_cast<double>(k)));
        }
        a[k] = coef * ik[k];
    }
    out.assign(nmax + 1, TW<Real>(W(0.0), W(0.0)));
    W pref(1.0);  // (nu+1)_n (n!)^2
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) pref = pref * W(Real(static_cast<double>(pr.nu + n) * n * n));
        W s(0.0), m(0.0);
        for (int k = 0; k <= n; ++k) {
            W t = a[k] * invf[n - k];
            if (k % 2) s -= t;
            else s += t;
            m += t;
        }
        W v = s * pref;
        if (n % 2) v = -v;
        out[n] = TW<Real>(v, m * pref);
    }
}

// q~_n = (-1)^n 2/(n! nu!) sum_l (-n)_l/((nu+1)_l l!) d^{l+nu} K^_{l+nu}(w); the factor
// e^{-w} mu^{-1/2} is stripped and -w returned.
template <class Real>
void q_core(const CoupledParams& pr, int nmax, double y, std::vector<TW<Real>>& out, Real& mw) {
    using std::sqrt;
    using W = Wide<Real>;
    const Real mu(pr.mu);
    const Real sy = sqrt(Real(y));
    const Real w = (Real(1.0) + mu) * sy / mu;
    mw = -w;
    const Real d = Real(2.0) * sy / (Real(1.0) + mu);
    std::vector<W> kk;
    bessel_k_scaled_array<Real>(nmax + pr.nu, w, kk);
    std::vector<W> b(nmax + 1), invf(nmax + 1);
    W coef(1.0);
    for (int i = 0; i < pr.nu; ++i) coef = coef * W(d);
    invf[0] = W(1.0);
    for (int l = 0; l <= nmax; ++l) {
        if (l > 0) {
            coef = coef * W(d / Real(static_cast<double>(pr.nu + l) * l));
            invf[l] = invf[l - 1] / W(Real(static_cast<double>(l)));
        }
        b[l] = coef * kk[l + pr.nu];
    }
    W pref(2.0);
    for (int i = 2; i <= pr.nu; ++i) pref = pref / W(Real(static_cast<double>(i)));
    out.assign(nmax + 1, TW<Real>(W(0.0), W(0.0)));
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) pref = pref / W(Real(static_cast<double>(n)));
        W s(0.0), m(0.0);
        for (int l = 0; l <= n; ++l) {
            W t = b[l] * invf[n - l];
            if (l % 2) s -= t;
            else s += t;
            m += t;
        }
        W v = s * pref;
        if (n % 2) v = -v;
        out[n] = TW<Real>(v, m * pref);
    }
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

template <class Side>
std::vector<ScaledReal> table_api(const CoupledParams& pr, int nmax, double arg, Side side) {
    pr.validate();
    check_positive(arg, "argument");
    if (nmax < 0) throw DomainError("index must be nonnegative");
    const double half_log_mu = 0.5 * std::log(pr.mu);
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        std::vector<TW<Real>> t;
        Real e;
        side(tag, t, e);
        std::vector<ScaledReal> v(t.size());
        double err = 0.0;
        for (std::size_t n = 0; n < t.size(); ++n) {
            v[n] = to_scaled(t[n].v, to_double(e) - half_log_mu);
            err = std::max(err, rel_error<Real>(t[n]));
        }
        return std::make_pair(v, err);
    });
    return res.value;
}

}  // namespace

CDCoeffs cd_coeffs(const CoupledParams& p, int n) {
    auto a = cd_coeffs_t<double>(p.mu, p.nu, n);
    return {a[0], a[1], a[2], a[3]};
}

std::vector<ScaledReal> p_table(const CoupledParams& p, int nmax, double x) {
    return table_api(p, nmax, x, [&](auto tag, auto& t, auto& e) {
        using Real = decltype(tag);
        p_core<Real>(p, nmax, x, t, e);
    });
}

std::vector<ScaledReal> q_table(const CoupledParams& p, int nmax, double y) {
    return table_api(p, nmax, y, [&](auto tag, auto& t, auto& e) {
        using Real = decltype(tag);
        q_core<Real>(p, nmax, y, t, e);
    });
}

ScaledReal p_n(const CoupledParams& p, int n, double x) {
    if (n > p.n_size + 1) throw DomainError("p_n: n exceeds N + 1");
    return p_table(p, n, x)[n];
}

ScaledReal q_n(const CoupledParams& p, int n, double y) {
    if (n > p.n_size + 1) throw DomainError("q_n: n exceeds N + 1");
    return q_table(p, n, y)[n];
}

KernelEval kernel_eval(const CoupledParams& p, double x, double y, double gauge) {
    p.validate();
    check_positive(x, "kernel: x");
    check_positive(y, "kernel: y");
    const int N = p.n_size;
    const double log_mu = std::log(p.mu);
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        std::vector<TW<Real>> P, Q;
        Real z, mw;
        p_core<Real>(p, N - 1, x, P, z);
        q_core<Real>(p, N - 1, y, Q, mw);
        TW<Real> s(W(0.0), W(0.0));
        for (int n = 0; n < N; ++n) s = s + P[n] * Q[n];
        const Real e = z + mw + Real(gauge);
        return std::make_pair(to_scaled(s.v, to_double(e) - log_mu).value(), rel_error<Real>(s));
    });
    return {res.value, res.rel_err, res.bits, res.converged};
}

double kernel(const CoupledParams& p, double x, double y, double gauge) { return kernel_eval(p, x, y, gauge).value; }

KernelEval kernel_cd_eval(const CoupledParams& p, double x, double y, double gauge) {
    p.validate();
    check_positive(x, "kernel_cd: x");
    check_positive(y, "kernel_cd: y");
    if (std::fabs(x - y) < 1e-6 * std::max(x, y)) return kernel_eval(p, x, y, gauge);
    const int N = p.n_size;
    const double log_mu = std::log(p.mu);
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        std::vector<TW<Real>> P, Q;
        Real z, mw;
        p_core<Real>(p, N + 1, x, P, z);
        q_core<Real>(p, N + 1, y, Q, mw);
        const TW<Real> zero(W(0.0), W(0.0));
        auto pp = [&](int n) { return n < 0 ? zero : P[n]; };
        auto qq = [&](int n) { return n < 0 ? zero : Q[n]; };
        auto aN = cd_coeffs_t<Real>(p.mu, p.nu, N);
        auto aN1 = cd_coeffs_t<Real>(p.mu, p.nu, N + 1);
        auto aNm1 = cd_coeffs_t<Real>(p.mu, p.nu, N - 1);
        auto aNm2 = cd_coeffs_t<Real>(p.mu, p.nu, N - 2);
        TW<Real> s = scale(pp(N) * qq(N - 1), W(aNm1[2])) + scale(pp(N) * qq(N - 2), W(aNm2[3])) +
                     scale(pp(N + 1) * qq(N - 1), W(aNm1[3])) - scale(pp(N - 2) * qq(N), W(aN[0])) -
                     scale(pp(N - 1) * qq(N + 1), W(aN1[0])) - scale(pp(N - 1) * qq(N), W(aN[1]));
        const Real inv = Real(1.0) / (Real(x) - Real(y));
        s = scale(s, W(inv));
        const Real e = z + mw + Real(gauge);
        return std::make_pair(to_scaled(s.v, to_double(e) - log_mu).value(), rel_error<Real>(s));
    });
    return {res.value, res.rel_err, res.bits, res.converged};
}

double kernel_cd(const CoupledParams& p, double x, double y, double gauge) { return kernel_cd_eval(p, x, y, gauge).value; }

double kernel_diag(const CoupledParams& p, double y) { return kernel(p, y, y); }

namespace {

// log|det| and sign of a matrix after extracting the largest entry of every row.
std::pair<double, int> log_det(Eigen::MatrixXd m) {
    double lsum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double s = m.row(i).cwiseAbs().maxCoeff();
        if (s == 0.0) return {-INFINITY, 0};
        m.row(i) /= s;
        lsum += std::log(s);
    }
    const double d = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
    if (d == 0.0 || !std::isfinite(d)) return {-INFINITY, 0};
    return {lsum + std::log(std::fabs(d)), d > 0 ? 1 : -1};
}

void check_points(const std::vector<double>& ys, int n) {
    if (static_cast<int>(ys.size()) != n) throw DomainError("number of points must equal N");
    for (double y : ys) check_positive(y, "point");
}

}  // namespace

double joint_density(const CoupledParams& p, const std::vector<double>& ys) {
    p.validate();
    const int N = p.n_size;
    check_points(ys, N);
    const double mu = p.mu;
    Eigen::MatrixXd A(N, N), B(N, N);
    double row_expo = 0.0;
    for (int i = 0; i < N; ++i) {
        const double sy = std::sqrt(ys[i]);
        const double z = (1.0 - mu) / mu * sy, w = (1.0 + mu) / mu * sy;
        std::vector<Xd> ik, kk;
        bessel_i_scaled_array<double>(N - 1, z, ik);
        bessel_k_scaled_array<double>(N - 1 + p.nu, w, kk);
        for (int j = 0; j < N; ++j) {
            A(i, j) = to_double(ik[j] * Xd(std::pow(ys[i], 0.5 * j)));
            B(i, j) = to_double(kk[j + p.nu] * Xd(std::pow(ys[i], 0.5 * (j + p.nu))));
        }
        row_expo += z - w;
    }
    auto [la, sa] = log_det(A);
    auto [lb, sb] = log_det(B);
    if (sa == 0 || sb == 0) return 0.0;
    double log_z = std::lgamma(N + 1.0) - (static_cast<double>(N) * p.nu + static_cast<double>(N) * N) * kLn2 +
                   N * std::log(mu) + static_cast<double>(N) * p.nu * std::log1p(mu) +
                   0.5 * N * (N - 1.0) * std::log1p(-mu * mu);
    for (int j = 1; j <= N; ++j) log_z += std::lgamma(j) + std::lgamma(j + p.nu);
    return sa * sb * std::exp(la + lb + row_expo - log_z);
}

double independent_joint_density(int n_size, int nu, const std::vector<double>& ys) {
    if (n_size < 1 || nu < 0) throw DomainError("independent_joint_density: invalid N or nu");
    const int N = n_size;
    check_points(ys, N);
    Eigen::MatrixXd A(N, N), B(N, N);
    double row_expo = 0.0;
    for (int i = 0; i < N; ++i) {
        const double w = 2.0 * std::sqrt(ys[i]);
        std::vector<Xd> kk;
        bessel_k_scaled_array<double>(N - 1 + nu, w, kk);
        for (int j = 0; j < N; ++j) {
            A(i, j) = std::pow(ys[i], j);
            B(i, j) = 2.0 * to_double(kk[j + nu] * Xd(std::pow(ys[i], 0.5 * (j + nu))));
        }
        row_expo -= w;
    }
    auto [la, sa] = log_det(A);
    auto [lb, sb] = log_det(B);
    if (sa == 0 || sb == 0) return 0.0;
    double log_z = std::lgamma(N + 1.0);
    for (int j = 1; j <= N; ++j) log_z += 2.0 * std::lgamma(j) + std::lgamma(j + nu);
    return sa * sb * std::exp(la + lb + row_expo - log_z);
}

namespace {

double laguerre_log_weight(int nu, double x, double y, double mu, double gauge) {
    const double sx = std::sqrt(x), sy = std::sqrt(y);
    return 0.5 * nu * std::log(2.0 * sx) - sx - 0.25 * std::log(x) + 0.5 * nu * std::log(2.0 * sy) - sy -
           0.25 * std::log(y) + 0.5 * nu * (std::log(sy) - std::log(sx)) + (sx - sy) / mu + gauge;
}

void check_laguerre(int n_size, int nu, double x, double y, double mu) {
    if (n_size < 1 || nu < 0) throw DomainError("laguerre_kernel: invalid N or nu");
    check_positive(x, "laguerre_kernel: x");
    check_positive(y, "laguerre_kernel: y");
    if (!(mu > 0.0)) throw DomainError("laguerre_kernel: mu must be positive");
}

}  // namespace

double laguerre_kernel(int n_size, int nu, double x, double y, double mu, double gauge) {
    check_laguerre(n_size, nu, x, y, mu);
    const double a = 2.0 * std::sqrt(x), b = 2.0 * std::sqrt(y);
    double s = 0.0;
    for (int n = 0; n < n_size; ++n)
        s += std::exp(std::lgamma(n + 1.0) - std::lgamma(n + 1.0 + nu)) * laguerre(n, nu, a) * laguerre(n, nu, b);
    return s * std::exp(laguerre_log_weight(nu, x, y, mu, gauge));
}

double laguerre_kernel_cd(int n_size, int nu, double x, double y, double mu, double gauge) {
    check_laguerre(n_size, nu, x, y, mu);
    if (x == y) return laguerre_kernel(n_size, nu, x, y, mu, gauge);
    const int N = n_size;
    const double a = 2.0 * std::sqrt(x), b = 2.0 * std::sqrt(y);
    const double num = laguerre(N, nu, a) * laguerre(N - 1, nu, b) - laguerre(N, nu, b) * laguerre(N - 1, nu, a);
    const double pre = -std::exp(std::lgamma(N + 1.0) - std::lgamma(static_cast<double>(N + nu)));
    return pre * num / (a - b) * std::exp(laguerre_log_weight(nu, x, y, mu, gauge));
}

double a_n_poly(double s, double t, const CoupledParams& p) {
    const double N = p.n_size, nu = p.nu, mu = p.mu;
    if (s == N + 1.0 || t == N + 1.0) throw DomainError("a_n_poly: pole at s = N + 1 or t = N + 1");
    const double op = (1.0 + mu) * (1.0 + mu), om = (1.0 - mu) * (1.0 - mu);
    return -op / 4.0 * (t - N) * (t - N + 1.0) - op / 4.0 * (nu + N + 1.0) * (N + 1.0) * (t - N) / (s - N - 1.0) -
           mu * (3.0 * N + nu) * (t - N) - om / 2.0 * (2.0 * N + nu) * (t - N) + mu * N * (s - N) +
           om / 2.0 * (2.0 * N + nu) * (s - N) + om / 4.0 * (s - N) * (s - N + 1.0) +
           om / 4.0 * (N + 1.0) * (nu + N + 1.0) * (s - N) / (t - N - 1.0);
}

}  // namespace hek
