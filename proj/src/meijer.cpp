#include "hek/meijer.hpp"

#include "hek/quadrature.hpp"
#include "hek/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hek {

void MBQuadSpec::validate() const {
    if (!(step > 0.0 && step <= 0.1)) throw DomainError("mb step must lie in (0, 0.1]");
    if (!(cutoff > 0.0)) throw DomainError("mb cutoff must be positive");
    if (!std::isfinite(offset)) throw DomainError("mb offset must be finite");
}

LineResult mb_line_integral(const std::function<cplx(cplx)>& f, const MBQuadSpec& spec) {
    spec.validate();
    const int n = static_cast<int>(std::ceil(spec.cutoff / spec.step));
    cplx sum = 0.0;
    double mag = 0.0, edge = 0.0;
    for (int j = -n; j <= n; ++j) {
        const cplx v = f(cplx(spec.offset, j * spec.step));
        sum += v;
        mag += std::abs(v);
        if (j == -n || j == n) edge = std::max(edge, std::abs(v));
    }
    LineResult r;
    r.value = sum * (spec.step / (2.0 * kPi));
    r.tail = mag > 0.0 ? edge / mag : 0.0;
    r.nodes = 2 * n + 1;
    return r;
}

LineResult mb_loop_integral(const std::function<cplx(cplx)>& f, double c, double step, double tau_max) {
    const int n = static_cast<int>(std::ceil(tau_max / step));
    cplx sum = 0.0;
    double mag = 0.0, edge = 0.0;
    for (int j = -n; j <= n; ++j) {
        const double tau = j * step;
        const cplx s(c - tau * tau, tau);
        const cplx v = f(s) * cplx(-2.0 * tau, 1.0);
        sum += v;
        mag += std::abs(v);
        if (j == -n || j == n) edge = std::max(edge, std::abs(v));
    }
    LineResult r;
    // ds = (-2 tau + i) d tau, and 1/(2 pi i)
    r.value = sum * step / cplx(0.0, 2.0 * kPi);
    r.tail = mag > 0.0 ? edge / mag : 0.0;
    r.nodes = 2 * n + 1;
    return r;
}

namespace {

bool at_pole(cplx z) { return z.real() <= 0.0 && z.imag() == 0.0 && std::floor(z.real()) == z.real(); }

// log of prod Gamma(b_j + s), j < m, over prod Gamma(1 - b_j - s), j >= m; -inf on a reciprocal pole.
cplx log_meijer_weight(int m, const std::vector<double>& b, cplx s) {
    cplx acc = 0.0;
    for (int j = 0; j < static_cast<int>(b.size()); ++j) {
        if (j < m) {
            if (at_pole(b[j] + s)) throw DomainError("meijer_g: contour passes through a pole");
            acc += ln_gamma(b[j] + s);
        } else {
            const cplx a = 1.0 - b[j] - s;
            if (at_pole(a)) return cplx(-INFINITY, 0.0);
            acc -= ln_gamma(a);
        }
    }
    return acc;
}

double default_offset(int m, const std::vector<double>& b) {
    double lo = b[0];
    for (int j = 1; j < m; ++j) lo = std::min(lo, b[j]);
    return 0.5 - lo;
}

template <class Real>
Real recip_gamma(double a) {
    using std::exp;
    if (a <= 0.0 && std::floor(a) == a) return Real(0.0);
    Real r = exp(-lgam(Real(a)));
    if (a < 0.0 && static_cast<long>(std::floor(a)) % 2 != 0) r = -r;
    return r;
}

}  // namespace

double meijer_g(int m, const std::vector<double>& b, double z, const MBQuadSpec& spec_in) {
    const int q = static_cast<int>(b.size());
    if (m < 1 || m > q) throw DomainError("meijer_g: need 1 <= m <= q");
    if (2 * m <= q) throw DomainError("meijer_g: the vertical line needs 2m > q; use the loop form");
    if (!(z > 0.0)) throw DomainError("meijer_g: z must be positive");
    MBQuadSpec spec = spec_in;
    if (std::isnan(spec.offset)) spec.offset = default_offset(m, b);
    for (int j = 0; j < m; ++j) {
        const double p = spec.offset + b[j];
        if (p <= 0.0 && std::floor(p) == p) throw DomainError("meijer_g: offset coincides with a pole");
        if (p < 0.0) throw DomainError("meijer_g: offset must lie right of the poles of Gamma(b_j + s)");
    }
    const double lz = std::log(z);
    auto f = [&](cplx s) {
        const cplx lw = log_meijer_weight(m, b, s);
        if (std::isinf(lw.real())) return cplx(0.0);
        return std::exp(lw - s * lz);
    };
    return mb_line_integral(f, spec).value.real();
}

double meijer_g_103(double b1, double b2, double b3, double z) {
    if (!(z > 0.0)) throw DomainError("meijer_g_103: z must be positive");
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using std::log;
        using std::exp;
        Tracked<Real> s(Real(0.0), Real(0.0));
        Real p(1.0);
        const Real rz(z);
        for (int k = 0; k < 100000; ++k) {
            if (k > 0) p = p * rz / Real(static_cast<double>(k));
            Real t = p * recip_gamma<Real>(1.0 + b1 - b2 + k) * recip_gamma<Real>(1.0 + b1 - b3 + k);
            if (k % 2) t = -t;
            s = s + Tracked<Real>(t);
            const double td = std::fabs(to_double(t));
            if (k > 3 && k > std::cbrt(z) + std::fabs(b1 - b2) + std::fabs(b1 - b3) &&
                td <= 1e-3 * unit_roundoff<Real>() * std::fabs(to_double(s.m)))
                break;
        }
        const Real v = s.v * exp(Real(b1) * log(rz));
        return std::make_pair(to_double(v), rel_error<Real>(s));
    });
    return res.value;
}

double meijer_g_103_contour(double b1, double b2, double b3, double z, double step) {
    if (!(z > 0.0)) throw DomainError("meijer_g_103: z must be positive");
    const std::vector<double> b = {b1, b2, b3};
    const double c = 0.5 - b1;
    const double lz = std::log(z);
    auto f = [&](cplx s) {
        const cplx lw = log_meijer_weight(1, b, s);
        if (std::isinf(lw.real())) return cplx(0.0);
        return std::exp(lw - s * lz);
    };
    // the integrand falls like 1/Gamma(tau^2)^3 along the parabola
    const double tau_max = 8.0 + std::sqrt(std::max(0.0, 2.0 * std::fabs(lz)));
    return mb_loop_integral(f, c, step, tau_max).value.real();
}

double meijer_g_203(double b1, double b2, double b3, double z, const MBQuadSpec& spec) {
    return meijer_g(2, {b1, b2, b3}, z, spec);
}

MeijerEval meijer_kernel_eval(double nu1, double nu2, double x, double y, const MBQuadSpec& spec, double eps,
                              int k_max) {
    if (!(nu1 > -1.0 && nu2 > -1.0)) throw DomainError("meijer_kernel: nu1, nu2 must exceed -1");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("meijer_kernel: x, y must be positive");
    spec.validate();
    const double c = spec.offset;
    if (!(c < 0.0 && c > -1.0 - std::min({0.0, nu1, nu2})))
        throw DomainError("meijer_kernel: offset must separate the s-poles from t = 0, 1, 2, ...");
    const int n = static_cast<int>(std::ceil(spec.cutoff / spec.step));
    std::vector<cplx> nodes, w;
    nodes.reserve(2 * n + 1);
    w.reserve(2 * n + 1);
    const double ly = std::log(y);
    double edge = 0.0, total = 0.0;
    for (int j = -n; j <= n; ++j) {
        const cplx s(c, j * spec.step);
        const cplx lg = ln_gamma(s + 1.0) + ln_gamma(s + nu1 + 1.0) + ln_gamma(s + nu2 + 1.0) - (s + 1.0) * ly;
        const cplx v = std::exp(lg) * std::sin(kPi * s);
        nodes.push_back(s);
        w.push_back(v);
        total += std::abs(v);
        if (j == -n || j == n) edge = std::max(edge, std::abs(v));
    }
    MeijerEval out;
    out.tail = total > 0.0 ? edge / total : 0.0;
    cplx sum = 0.0;
    double mag = 0.0;
    int quiet = 0;
    out.converged = false;
    for (int k = 0; k <= k_max; ++k) {
        cplx line = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) line += w[j] / (nodes[j] - static_cast<double>(k));
        line *= spec.step / (2.0 * kPi);
        const double la = k * std::log(x) - std::lgamma(k + 1.0) - std::lgamma(k + nu1 + 1.0) - std::lgamma(k + nu2 + 1.0);
        cplx term = std::exp(la) / kPi * line;
        if (k % 2) term = -term;
        sum += term;
        mag += std::abs(term);
        out.terms = k + 1;
        const bool past_peak = k > std::cbrt(x) + 2.0;
        if (past_peak && std::abs(term) <= eps * std::abs(sum)) ++quiet;
        else quiet = 0;
        if (quiet >= 2) { out.converged = true; break; }
    }
    out.value = sum.real();
    out.imag_residual = std::fabs(sum.imag()) / std::max(std::fabs(sum.real()), 1e-300);
    return out;
}

double meijer_kernel(double nu1, double nu2, double x, double y) { return meijer_kernel_eval(nu1, nu2, x, y).value; }

namespace {

// G^{2,0}_{0,3}(b1, b2, b3 | z) for many z on one line; the Gamma factors are cached.
class G203Line {
public:
    G203Line(double b1, double b2, double b3, const MBQuadSpec& spec) : h_(spec.step) {
        const double c = 0.5 - std::min(b1, b2);
        const int n = static_cast<int>(std::ceil(spec.cutoff / spec.step));
        for (int j = -n; j <= n; ++j) {
            const cplx s(c, j * spec.step);
            s_.push_back(s);
            w_.push_back(std::exp(ln_gamma(s + b1) + ln_gamma(s + b2) - ln_gamma(1.0 - b3 - s)));
        }
    }
    double operator()(double z) const {
        const double lz = std::log(z);
        cplx sum = 0.0;
        for (std::size_t j = 0; j < s_.size(); ++j) sum += w_[j] * std::exp(-s_[j] * lz);
        return (sum * (h_ / (2.0 * kPi))).real();
    }

private:
    double h_;
    std::vector<cplx> s_, w_;
};

}  // namespace

double meijer_kernel_u_integral(double nu1, double nu2, double x, double y, double tol) {
    if (!(nu1 > -1.0 && nu2 > -1.0)) throw DomainError("meijer_kernel: nu1, nu2 must exceed -1");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("meijer_kernel: x, y must be positive");
    G203Line g2(nu1, nu2, 0.0, MBQuadSpec{0.0, 0.05, 40.0});
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        return meijer_g_103(0.0, -nu1, -nu2, u * x) * g2(u * y);
    };
    return integrate(f, 0.0, 1.0, tol).value;
}

double finite_independent_kernel(int n_size, int nu, double x, double y) {
    if (n_size < 1 || nu < 0) throw DomainError("finite_independent_kernel: invalid N or nu");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("finite_independent_kernel: x, y must be positive");
    const int N = n_size;
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        using std::sqrt;
        using TW = Tracked<W>;
        // c_j x^j with c_j = (-1)^{N-1-j} / ((N-1-j)! j!^2 Gamma(j+nu+1))
        std::vector<W> cx(N);
        {
            W fact_nm1(1.0);  // (N-1)!
            for (int i = 2; i < N; ++i) fact_nm1 = fact_nm1 * W(Real(static_cast<double>(i)));
            W nuf(1.0);
            for (int i = 2; i <= nu; ++i) nuf = nuf * W(Real(static_cast<double>(i)));
            W c = W(1.0) / (fact_nm1 * nuf);  // j = 0
            for (int j = 0; j < N; ++j) {
                if (j > 0) {
                    // ratio c_j / c_{j-1} = -(N-j) x / (j^2 (j+nu))
                    c = c * W(Real(x) * Real(static_cast<double>(N - j)) /
                              (Real(static_cast<double>(j)) * Real(static_cast<double>(j)) *
                               Real(static_cast<double>(j + nu))));
                }
                cx[j] = (N - 1 - j) % 2 ? -c : c;
            }
        }
        // R(-n) = (-1)^N Gamma(n+N)/Gamma(n) sum_j c_j x^j / (-n - j), n = 1..N
        std::vector<TW> dd(N);
        for (int n = 1; n <= N; ++n) {
            W pre(1.0);
            for (int i = 0; i < N; ++i) pre = pre * W(Real(static_cast<double>(n + i)));
            if (N % 2) pre = -pre;
            TW s(W(0.0), W(0.0));
            for (int j = 0; j < N; ++j) s = s + TW(cx[j] / W(Real(static_cast<double>(-n - j))));
            dd[n - 1] = scale(s, pre);
        }
        // Newton divided differences on the nodes -1, -2, ..., -N (spacing -1)
        for (int m = 1; m < N; ++m)
            for (int i = N - 1; i >= m; --i) dd[i] = scale(dd[i] - dd[i - 1], W(Real(-1.0) / Real(static_cast<double>(m))));
        // sum_m d_m 2 y^{(m+nu)/2} K_{|m-nu|}(2 sqrt y)
        const Real sy = sqrt(Real(y));
        std::vector<W> kk;
        bessel_k_scaled_array<Real>(std::max(N - 1, nu), Real(2.0) * sy, kk);
        TW total(W(0.0), W(0.0));
        W pw(1.0);
        for (int i = 0; i < nu; ++i) pw = pw * W(sy);
        for (int m = 0; m < N; ++m) {
            if (m > 0) pw = pw * W(sy);
            total = total + scale(dd[m], W(2.0) * pw * kk[std::abs(m - nu)]);
        }
        const Real expo = Real(-2.0) * sy;
        return std::make_pair(to_scaled(total.v, to_double(expo)).value(), rel_error<Real>(total));
    });
    return res.value;
}

double finite_independent_kernel_line(int n_size, int nu, double x, double y, const MBQuadSpec& spec) {
    if (n_size < 1 || nu < 0) throw DomainError("finite_independent_kernel: invalid N or nu");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("finite_independent_kernel: x, y must be positive");
    const int N = n_size;
    const double ly = std::log(y);
    double total = 0.0;
    for (int j = 0; j < N; ++j) {
        const double lc = j * std::log(x) - std::lgamma(N - j) - 2.0 * std::lgamma(j + 1.0) - std::lgamma(j + nu + 1.0);
        const double cj = ((N - 1 - j) % 2 ? -1.0 : 1.0) * std::exp(lc);
        auto f = [&](cplx s) {
            // 1/Gamma(s-N+1) = prod_{i<N}(s-i) / Gamma(s+1)
            cplx poly = 1.0;
            for (int i = 0; i < N; ++i) poly *= s - static_cast<double>(i);
            const cplx lg = ln_gamma(s + 1.0) + ln_gamma(s + static_cast<double>(nu) + 1.0) - (s + 1.0) * ly;
            return std::exp(lg) * poly / (s - static_cast<double>(j));
        };
        total += cj * mb_line_integral(f, spec).value.real();
    }
    return total;
}

namespace {

// One Wright factor with the coefficients cached at the chosen precision.
template <class Real>
struct BorodinIntegrand {
    WrightSeries<Real> w1, w2;
    double x, y, alpha, theta;
    BorodinIntegrand(double alpha_, double theta_, double x_, double y_)
        : w1((alpha_ + 1.0) / theta_, 1.0 / theta_), w2(alpha_ + 1.0, theta_), x(x_), y(y_), alpha(alpha_), theta(theta_) {}
    // J_{(a+1)/t, 1/t}(x u) J_{a+1, t}((y u)^t) without the u^alpha weight
    Tracked<Real> eval(double u) {
        const double eps = unit_roundoff<Real>() * 0.1;
        Tracked<Real> a = w1.eval(Real(x * u), eps);
        Tracked<Real> b = w2.eval(Real(std::pow(y * u, theta)), eps);
        return a * b;
    }
};

}  // namespace

MeijerEval borodin_kernel_eval(double alpha, double theta, double x, double y, double tol) {
    if (!(alpha > -1.0)) throw DomainError("borodin_kernel: alpha must exceed -1");
    if (!(theta > 0.0)) throw DomainError("borodin_kernel: theta must be positive");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("borodin_kernel: x, y must be positive");
    // the cancellation in the Wright series is worst at u = 1; size the precision there
    BorodinIntegrand<double> probe(alpha, theta, x, y);
    const Tracked<double> t1 = probe.eval(1.0);
    const double amp = std::fabs(t1.v) > 0.0 ? std::fabs(t1.m / t1.v) : 1e300;
    const double need = std::log2(std::max(amp, 1.0)) + 53.0 + 30.0;
    MeijerEval out;
    // u = v^r with r(1 + alpha) >= 1 removes the u^alpha endpoint singularity and
    // r theta >= 1 keeps (yu)^theta smooth at v = 0
    double r = alpha < 0.0 ? 1.0 / (1.0 + alpha) : 1.0;
    if (theta < 1.0) r = std::max(r, 1.0 / theta);
    const double wexp = r * (1.0 + alpha) - 1.0;
    auto run = [&](auto& integrand) {
        auto f = [&](double v) {
            if (v <= 0.0) return 0.0;
            const double u = r == 1.0 ? v : std::pow(v, r);
            const double w = r * (wexp == 0.0 ? 1.0 : std::pow(v, wexp));
            return to_double(integrand.eval(u).v) * w;
        };
        return integrate(f, 0.0, 1.0, tol, 20);
    };
    QuadResult q;
    if (need <= 80.0) {
        q = run(probe);
    } else {
        PrecisionScope scope(static_cast<long>(need) + 32);
        BorodinIntegrand<Mpf> integrand(alpha, theta, x, y);
        q = run(integrand);
    }
    out.value = theta * std::pow(x, alpha) * q.value;
    out.converged = q.converged;
    out.tail = q.error;
    return out;
}

double borodin_kernel(double alpha, double theta, double x, double y) {
    return borodin_kernel_eval(alpha, theta, x, y).value;
}

double rho_micro_mb(double alpha, double theta, double x) {
    if (!(x > 0.0)) throw DomainError("rho_micro_mb: x must be positive");
    const double X = std::pow(x, theta + 1.0);
    return x * borodin_kernel(alpha, theta, X, X) * std::pow(theta, -1.0 / (1.0 + theta)) / std::sin(kPi / (theta + 1.0));
}

}  // namespace hek
