#include "hek/hard_edge.hpp"

#include "hek/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace hek {

void Truncation::validate() const {
    if (!(eps > 0.0 && eps <= 1e-6)) throw DomainError("truncation eps must lie in (0, 1e-6]");
    if (k_max < 16) throw DomainError("truncation k_max must be at least 16");
}

void InterpParams::validate() const {
    if (nu < 0) throw DomainError("nu must be nonnegative");
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("g must be positive and finite");
    trunc.validate();
}

double cal_p(double s, double t, int nu) {
    return 0.25 * (t - s) * (t * t + s * s + (t + s) * (nu - 1.0) - nu);
}

double cal_p_expanded(double s, double t, int nu) {
    const double v = nu;
    const double ss = s * (s + v), tt = t * (t + v);
    return -0.25 * (ss * (s + v - 1.0) - tt * (t + v - 1.0) - v * ss + v * tt + tt * s - ss * t);
}

namespace {

template <class Real>
using TW = Tracked<Wide<Real>>;

template <class Real>
struct Series4 {
    std::array<TW<Real>, 4> s;
    double expo = 0.0;  // common analytic exponent
    int terms = 0;
    bool converged = true;
};

inline double weight(int i, int k, int nu) {
    const double kd = k, kn = k + nu;
    switch (i) {
        case 0: return 1.0;
        case 1: return kd;
        case 2: return kd * kn;
        default: return kd * kn * (kn - 1.0);
    }
}

// Accumulates -sum_k (-1)^k w_i(k) a_k for the four weights; a_k supplied in order.
// Stops past the peak once two consecutive terms fall below tol times every running magnitude.
template <class Real>
class FourSum {
public:
    FourSum(int nu, double tol) : nu_(nu), tol_(tol) {
        for (auto& t : s_) t = TW<Real>(Wide<Real>(0.0), Wide<Real>(0.0));
    }
    // returns true when the series may stop
    bool add(int k, const Wide<Real>& a) {
        using W = Wide<Real>;
        const W signed_a = (k % 2) ? a : -a;
        const double am = log_abs(a);
        bool small = true;
        for (int i = 0; i < 4; ++i) {
            const double w = weight(i, k, nu_);
            if (w == 0.0) continue;
            s_[i] = s_[i] + TW<Real>(signed_a * W(Real(w)));
            const double lm = log_abs(s_[i].m);
            if (!(am + std::log(std::fabs(w)) <= lm + std::log(tol_))) small = false;
        }
        if (is_zero(a)) small = true;
        const bool falling = k >= 2 && (is_zero(a) || am < last_);
        last_ = is_zero(a) ? -1e300 : am;
        if (falling && small) ++quiet_;
        else quiet_ = 0;
        return quiet_ >= 2;
    }
    const std::array<TW<Real>, 4>& sums() const { return s_; }

private:
    int nu_;
    double tol_;
    double last_ = -1e300;
    int quiet_ = 0;
    std::array<TW<Real>, 4> s_;
};

template <class Real>
double series_tol(const Truncation& tr) {
    return std::min(tr.eps, unit_roundoff<Real>());
}

template <class Real>
Series4<Real> phi_core(const InterpParams& p, double x, bool shifted) {
    using W = Wide<Real>;
    const Real z = Real(x) / (Real(2.0) * Real(p.g));
    std::vector<W> ik;
    bessel_i_scaled_array<Real>(p.trunc.k_max + 1, z, ik);
    W c(1.0);
    for (int i = 2; i <= p.nu; ++i) c = c / W(Real(static_cast<double>(i)));
    FourSum<Real> acc(p.nu, series_tol<Real>(p.trunc));
    Series4<Real> out;
    out.converged = false;
    for (int k = 0; k <= p.trunc.k_max; ++k) {
        if (k > 0) c = c * W(Real(x) / Real(static_cast<double>(k) * (k + p.nu)));
        const int idx = shifted ? std::abs(k - 1) : k;
        out.terms = k + 1;
        if (acc.add(k, c * ik[idx])) { out.converged = true; break; }
    }
    out.s = acc.sums();
    out.expo = to_double(z);
    return out;
}

template <class Real>
Series4<Real> f_core(const InterpParams& p, double y) {
    using W = Wide<Real>;
    using std::log;
    using std::exp;
    const Real z = Real(y) / (Real(2.0) * Real(p.g));
    std::vector<W> kk;
    bessel_k_scaled_array<Real>(p.trunc.k_max + p.nu, z, kk);
    // d_0 = y^nu / nu!
    W d(1.0);
    for (int i = 1; i <= p.nu; ++i) d = d * W(Real(y) / Real(static_cast<double>(i)));
    FourSum<Real> acc(p.nu, series_tol<Real>(p.trunc));
    Series4<Real> out;
    out.converged = false;
    for (int k = 0; k <= p.trunc.k_max; ++k) {
        if (k > 0) d = d * W(Real(y) / Real(static_cast<double>(k) * (k + p.nu)));
        out.terms = k + 1;
        if (acc.add(k, d * kk[k + p.nu])) { out.converged = true; break; }
    }
    out.s = acc.sums();
    out.expo = -to_double(z);
    return out;
}

template <class Real>
double max_rel(const Series4<Real>& s) {
    double r = 0.0;
    for (const auto& t : s.s) r = std::max(r, rel_error<Real>(t));
    return r;
}

struct Four {
    std::array<ScaledReal, 4> v;
    int terms = 0;
    bool converged = true;
};

template <class Fn>
FourFunctions run_four(Fn&& core) {
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        const Series4<Real> s = core(Real{});
        Four f;
        for (int i = 0; i < 4; ++i) f.v[i] = to_scaled(s.s[i].v, s.expo);
        f.terms = s.terms;
        f.converged = s.converged;
        return std::make_pair(f, max_rel(s));
    });
    FourFunctions out;
    out.v = res.value.v;
    out.rel_err = res.rel_err;
    out.terms = res.value.terms;
    out.bits = res.bits;
    out.converged = res.converged && res.value.converged;
    return out;
}

}  // namespace

FourFunctions phi_funcs(const InterpParams& p, double x) {
    p.validate();
    if (!(x > 0.0)) throw DomainError("phi_funcs: x must be positive");
    return run_four([&](auto tag) { return phi_core<decltype(tag)>(p, x, false); });
}

FourFunctions phi_funcs_shifted(const InterpParams& p, double x) {
    p.validate();
    if (!(x > 0.0)) throw DomainError("phi_funcs: x must be positive");
    return run_four([&](auto tag) { return phi_core<decltype(tag)>(p, x, true); });
}

FourFunctions f_funcs(const InterpParams& p, double y) {
    p.validate();
    if (!(y > 0.0)) throw DomainError("f_funcs: y must be positive");
    return run_four([&](auto tag) { return f_core<decltype(tag)>(p, y); });
}

FourFunctions f_funcs_mb(const InterpParams& p, double y, const MBQuadSpec& spec) {
    p.validate();
    spec.validate();
    if (!(y > 0.0)) throw DomainError("f_funcs_mb: y must be positive");
    if (!(spec.offset > 0.0 && spec.offset < 1.0)) throw DomainError("f_funcs_mb: offset must lie in (0, 1)");
    const double nu = p.nu, g = p.g, X = -4.0 * g;
    const double lz2 = 2.0 * std::log(y / (4.0 * g));
    const double l4g = std::log(4.0 * g);
    auto line = [&](auto&& h) { return mb_line_integral(h, spec); };
    // Gamma(s+nu+a) Gamma(s) z^{-2s}
    auto base = [&](cplx s, double a) { return ln_gamma(s + nu + a) + ln_gamma(s) - s * lz2; };
    std::array<LineResult, 4> r = {
        line([&](cplx s) { return std::exp(base(s, 0.0)) * kummer_m(s + nu, nu + 1.0, X); }),
        line([&](cplx s) { return std::exp(base(s, 1.0)) * kummer_m(s + nu + 1.0, nu + 2.0, X); }),
        line([&](cplx s) { return std::exp(base(s, 1.0)) * kummer_m(s + nu + 1.0, nu + 1.0, X); }),
        line([&](cplx s) { return std::exp(base(s, 1.0)) * kummer_m_regularized(s + nu + 1.0, nu, X); }),
    };
    const std::array<double, 4> logpre = {
        nu * l4g - std::lgamma(nu + 1.0) - kLn2,
        (nu + 1.0) * l4g - std::lgamma(nu + 2.0) - kLn2,
        (nu + 1.0) * l4g - std::lgamma(nu + 1.0) - kLn2,
        (nu + 1.0) * l4g - kLn2,
    };
    FourFunctions out;
    double tail = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double v = (i == 0 ? -1.0 : 1.0) * r[i].value.real();
        out.v[i] = to_scaled(v, logpre[i]);
        tail = std::max(tail, r[i].tail);
        const double im = std::fabs(r[i].value.imag()) / std::max(std::fabs(r[i].value.real()), 1e-300);
        out.rel_err = std::max(out.rel_err, im);
    }
    out.rel_err = std::max(out.rel_err, 1e-13);
    out.terms = r[0].nodes;
    out.converged = tail < 1e-15;
    return out;
}

double f1_large_g(const InterpParams& p, double y, const MBQuadSpec& spec) {
    p.validate();
    if (!(y > 0.0)) throw DomainError("f1_large_g: y must be positive");
    const double nu = p.nu;
    const double lw = std::log(y * y / (4.0 * p.g));
    auto h = [&](cplx s) { return std::exp(ln_gamma(s + nu) + ln_gamma(s) - ln_gamma(1.0 - s) - s * lw); };
    return -0.5 * mb_line_integral(h, spec).value.real();
}

namespace {

template <class Real>
struct Brackets {
    TW<Real> b1, b2;
    double expo = 0.0;
    bool converged = true;
};

template <class Real>
Brackets<Real> brackets(int nu, const std::array<TW<Real>, 4>& P, const std::array<TW<Real>, 4>& F) {
    using W = Wide<Real>;
    const W v(Real(static_cast<double>(nu)));
    Brackets<Real> b;
    b.b1 = P[0] * F[3] - P[3] * F[0] - scale(P[0] * F[2], v) + scale(P[2] * F[0], v) + P[2] * F[1] - P[1] * F[2];
    b.b2 = P[0] * F[2] + P[2] * F[0] - scale(P[1] * F[0], v) - P[1] * F[1];
    return b;
}

// F_i from the Kummer integrals as exact inputs at exponent 0
template <class Real>
std::array<TW<Real>, 4> as_tracked(const FourFunctions& f) {
    using W = Wide<Real>;
    std::array<TW<Real>, 4> out;
    for (int i = 0; i < 4; ++i) {
        const ScaledReal& s = f.v[i];
        if (s.significand == 0.0) { out[i] = TW<Real>(W(0.0), W(0.0)); continue; }
        W w = W(Real(s.significand)) * wide_exp(Real(s.exponent));
        out[i] = TW<Real>(w);
    }
    return out;
}

struct KOut {
    ScaledReal v;
    double amp = 1.0;  // magnitude / |value| of the final combination
    bool converged = true;
};

template <class Real>
double amplification(const TW<Real>& t) {
    if (is_zero(t.v)) return std::numeric_limits<double>::infinity();
    return std::exp(std::min(log_abs(t.m) - log_abs(t.v), 700.0));
}

// f_err: relative error of the Kummer F inputs, amplified by the final cancellation
KernelEval finish(const Adaptive<KOut>& res, double f_err = 0.0) {
    KernelEval e;
    e.value = res.value.v.value();
    e.rel_err = std::max(res.rel_err, f_err * res.value.amp);
    e.bits = res.bits;
    e.converged = res.converged && res.value.converged;
    return e;
}

}  // namespace

KernelEval interp_density_eval(const InterpParams& p, double x) {
    p.validate();
    if (!(x > 0.0)) throw DomainError("interp_density: x must be positive");
    const bool mb = p.g > kMbSwitchG;
    FourFunctions fmb;
    if (mb) fmb = f_funcs_mb(p, x);
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        const Series4<Real> P = phi_core<Real>(p, x, true);
        std::array<TW<Real>, 4> F;
        double fexpo = 0.0;
        bool conv = P.converged;
        if (mb) {
            F = as_tracked<Real>(fmb);
        } else {
            const Series4<Real> Fs = f_core<Real>(p, x);
            F = Fs.s;
            fexpo = Fs.expo;
            conv = conv && Fs.converged;
        }
        const Brackets<Real> b = brackets<Real>(p.nu, P.s, F);
        const Real g(p.g);
        // 2/(g^2 x) (-b1/4 - g b2)
        const TW<Real> t = scale(b.b1, W(Real(-0.25))) - scale(b.b2, W(g));
        const W pre = W(Real(2.0) / (g * g * Real(x)));
        KOut o;
        o.v = to_scaled(t.v * pre, P.expo + fexpo);
        o.amp = amplification<Real>(t);
        o.converged = conv;
        return std::make_pair(o, rel_error<Real>(t));
    });
    return finish(res, mb ? fmb.rel_err : 0.0);
}

double interp_density(const InterpParams& p, double x) { return interp_density_eval(p, x).value; }

KernelEval interp_kernel_eval(const InterpParams& p, double x, double y) {
    p.validate();
    if (!(x > 0.0 && y > 0.0)) throw DomainError("interp_kernel: x, y must be positive");
    if (std::fabs(x - y) < 1e-6 * std::max(x, y)) {
        KernelEval d = interp_density_eval(p, 0.5 * (x + y));
        d.value *= std::exp((x - y) / (2.0 * p.g));
        return d;
    }
    const bool mb = p.g > kMbSwitchG;
    FourFunctions fmb;
    if (mb) fmb = f_funcs_mb(p, y);
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        const Series4<Real> P = phi_core<Real>(p, x, false);
        std::array<TW<Real>, 4> F;
        double fexpo = 0.0;
        bool conv = P.converged;
        if (mb) {
            F = as_tracked<Real>(fmb);
        } else {
            const Series4<Real> Fs = f_core<Real>(p, y);
            F = Fs.s;
            fexpo = Fs.expo;
            conv = conv && Fs.converged;
        }
        const Brackets<Real> b = brackets<Real>(p.nu, P.s, F);
        const Real g(p.g), rx(x), ry(y);
        // -2/(x^2-y^2) (b1/g + 4 b2)
        const TW<Real> t = scale(b.b1, W(Real(1.0) / g)) + scale(b.b2, W(Real(4.0)));
        const W pre = W(Real(-2.0) / ((rx - ry) * (rx + ry)));
        KOut o;
        o.v = to_scaled(t.v * pre, P.expo + fexpo);
        o.amp = amplification<Real>(t);
        o.converged = conv;
        return std::make_pair(o, rel_error<Real>(t));
    });
    return finish(res, mb ? fmb.rel_err : 0.0);
}

double interp_kernel(const InterpParams& p, double x, double y) { return interp_kernel_eval(p, x, y).value; }

KernelEval interp_kernel_double_sum(const InterpParams& p, double x, double y) {
    p.validate();
    if (!(x > 0.0 && y > 0.0)) throw DomainError("interp_kernel: x, y must be positive");
    if (x == y) throw DomainError("interp_kernel_double_sum: x must differ from y");
    const int nu = p.nu;
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        using W = Wide<Real>;
        const Real g(p.g), rx(x), ry(y);
        const Real zx = rx / (Real(2.0) * g), zy = ry / (Real(2.0) * g);
        const int kmax = p.trunc.k_max;
        std::vector<W> ik, kk;
        bessel_i_scaled_array<Real>(kmax, zx, ik);
        bessel_k_scaled_array<Real>(kmax + nu, zy, kk);
        // single-index factors (-1)^k x^k/(k! Gamma(k+nu+1)) I_k and (-1)^l y^{l+nu}/(l! Gamma(l+nu+1)) K_{l+nu}
        auto build = [&](bool is_x, std::vector<W>& a) {
            const Real v = is_x ? rx : ry;
            W c(1.0);
            if (is_x) {
                for (int i = 2; i <= nu; ++i) c = c / W(Real(static_cast<double>(i)));
            } else {
                for (int i = 1; i <= nu; ++i) c = c * W(v / Real(static_cast<double>(i)));
            }
            const double tol = std::log(series_tol<Real>(p.trunc)) - 10.0;
            double peak = -1e300, last = -1e300;
            for (int k = 0; k <= kmax; ++k) {
                if (k > 0) c = c * W(v / Real(static_cast<double>(k) * (k + nu)));
                W t = c * (is_x ? ik[k] : kk[k + nu]);
                if (k % 2) t = -t;
                a.push_back(t);
                const double la = is_zero(t) ? -1e300 : log_abs(t) + 3.0 * std::log(k + nu + 1.0);
                peak = std::max(peak, la);
                if (k >= 2 && la < last && la < peak + tol) return true;
                last = la;
            }
            return false;
        };
        std::vector<W> ax, ay;
        const bool cx = build(true, ax), cy = build(false, ay);
        TW<Real> total(W(0.0), W(0.0));
        for (std::size_t k = 0; k < ax.size(); ++k) {
            for (std::size_t l = 0; l < ay.size(); ++l) {
                const double s = static_cast<double>(l), t = static_cast<double>(k);
                const Real poly = Real(cal_p(s, t, nu)) - g * Real(s * s + t * t + nu * s - s * t);
                total = total + TW<Real>(ax[k] * ay[l] * W(poly));
            }
        }
        const W pre = W(Real(8.0) / ((rx - ry) * (rx + ry) * g));
        KOut o;
        o.v = to_scaled(total.v * pre, to_double(zx) - to_double(zy));
        o.converged = cx && cy;
        return std::make_pair(o, rel_error<Real>(total));
    });
    return finish(res);
}

double bessel_density(int nu, double x) {
    if (nu < 0) throw DomainError("bessel_density: nu must be nonnegative");
    if (!(x > 0.0)) throw DomainError("bessel_density: x must be positive");
    const double z = 2.0 * std::sqrt(x);
    const double j = bessel_j_any(nu, z);
    // the x -> y limit of bessel_kernel is twice (J_nu^2 - J_{nu+1} J_{nu-1})/x
    return 2.0 * (j * j - bessel_j_any(nu + 1, z) * bessel_j_any(nu - 1, z)) / x;
}

namespace {

double bessel_kernel_form(int nu, double x, double y, bool alt) {
    if (nu < 0) throw DomainError("bessel_kernel: nu must be nonnegative");
    if (!(x > 0.0 && y > 0.0)) throw DomainError("bessel_kernel: x, y must be positive");
    if (std::fabs(x - y) < 1e-8 * std::max(x, y)) return bessel_density(nu, 0.5 * (x + y));
    const double sx = std::sqrt(x), sy = std::sqrt(y);
    const int m = alt ? nu + 1 : nu - 1;
    const double a = 2.0 * sx * bessel_j_any(m, 2.0 * sx) * bessel_j_any(nu, 2.0 * sy);
    const double b = 2.0 * sy * bessel_j_any(m, 2.0 * sy) * bessel_j_any(nu, 2.0 * sx);
    const double sign = alt ? 1.0 : -1.0;
    return sign * (a - b) / ((x - y) * sx * sy) * std::pow(y / x, 0.5 * nu);
}

}  // namespace

double bessel_kernel(int nu, double x, double y) { return bessel_kernel_form(nu, x, y, false); }
double bessel_kernel_alt(int nu, double x, double y) { return bessel_kernel_form(nu, x, y, true); }

namespace {

double moment_weight(MomentWeight w, int k, int nu) {
    const double t = k, tn = k + nu;
    switch (w) {
        case MomentWeight::one: return 1.0;
        case MomentWeight::t: return t;
        case MomentWeight::t_tnu: return t * tn;
        case MomentWeight::t_tnu_tnu1: return t * tn * (tn - 1.0);
        case MomentWeight::t2: return t * t;
        case MomentWeight::t2_tnu: return t * t * tn;
        case MomentWeight::t2_tnu_tnu1: return t * t * tn * (tn - 1.0);
    }
    return 0.0;
}

template <class Real>
TW<Real> moment_core(int nu, MomentWeight w, double xi) {
    using W = Wide<Real>;
    TW<Real> s(W(0.0), W(0.0));
    W c(1.0);
    for (int i = 2; i <= nu; ++i) c = c / W(Real(static_cast<double>(i)));
    const double peak_k = std::sqrt(xi) + 4.0;
    for (int k = 0; k < 100000; ++k) {
        if (k > 0) c = c * W(Real(xi) / Real(static_cast<double>(k) * (k + nu)));
        W t = c * W(Real(moment_weight(w, k, nu)));
        if (k % 2 == 0) t = -t;
        s = s + TW<Real>(t);
        if (k > peak_k && !is_zero(c) && log_abs(c) + 4.0 * std::log(k + nu + 1.0) < log_abs(s.m) + std::log(unit_roundoff<Real>()) - 5.0)
            break;
    }
    return s;
}

}  // namespace

double residue_j_moment(int nu, MomentWeight w, double xi) {
    if (nu < 0) throw DomainError("residue_j_moment: nu must be nonnegative");
    if (!(xi > 0.0)) throw DomainError("residue_j_moment: xi must be positive");
    auto res = run_adaptive([&](auto tag) {
        using Real = decltype(tag);
        const TW<Real> s = moment_core<Real>(nu, w, xi);
        return std::make_pair(to_double(s.v), rel_error<Real>(s));
    });
    return res.value;
}

double residue_j_closed(int nu, MomentWeight w, double xi) {
    if (nu < 0) throw DomainError("residue_j_closed: nu must be nonnegative");
    if (!(xi > 0.0)) throw DomainError("residue_j_closed: xi must be positive");
    const double z = 2.0 * std::sqrt(xi), h = -0.5 * nu;
    auto J = [&](int n) { return bessel_j_any(n, z); };
    auto p = [&](double e) { return std::pow(xi, h + e); };
    switch (w) {
        case MomentWeight::one: return -p(0.0) * J(nu);
        case MomentWeight::t: return p(0.5) * J(nu + 1);
        case MomentWeight::t_tnu: return p(1.0) * J(nu);
        case MomentWeight::t_tnu_tnu1: return p(1.5) * J(nu - 1);
        case MomentWeight::t2: return p(0.5) * J(nu + 1) - p(1.0) * J(nu + 2);
        case MomentWeight::t2_tnu: return p(1.0) * J(nu) - p(1.5) * J(nu + 1);
        case MomentWeight::t2_tnu_tnu1: return p(1.5) * J(nu - 1) - p(2.0) * J(nu);
    }
    return 0.0;
}

double bessel_kernel_residue(int nu, double x, double y) {
    if (nu < 0) throw DomainError("bessel_kernel_residue: nu must be nonnegative");
    if (!(x > 0.0 && y > 0.0) || x == y) throw DomainError("bessel_kernel_residue: need distinct positive x, y");
    const double xi = 2.0 * std::sqrt(x), eta = 2.0 * std::sqrt(y);
    using M = MomentWeight;
    auto mx = [&](M w) { return residue_j_moment(nu, w, xi); };
    auto my = [&](M w) { return residue_j_moment(nu, w, eta); };
    const double v = nu;
    // s(s+nu)(s+nu-1) - t(t+nu)(t+nu-1) - nu s(s+nu) + nu t(t+nu) + t(t+nu)s - s(s+nu)t
    const double sum = my(M::t_tnu_tnu1) * mx(M::one) - my(M::one) * mx(M::t_tnu_tnu1) -
                       v * my(M::t_tnu) * mx(M::one) + v * my(M::one) * mx(M::t_tnu) + my(M::t) * mx(M::t_tnu) -
                       my(M::t_tnu) * mx(M::t);
    return -sum * std::pow(eta, v) / (8.0 * (x - y) * std::pow(x * y, 0.25));
}

IdentityResidual identity_residual(int which, int nu, double x, bool as_printed) {
    if (which < 1 || which > 3) throw DomainError("identity_residual: which must be 1, 2 or 3");
    if (nu < 0) throw DomainError("identity_residual: nu must be nonnegative");
    if (!(x > 0.0)) throw DomainError("identity_residual: x must be positive");
    // (-1)^{i+j} x^{i+j+nu}/(i! j! Gamma(i+nu+1) Gamma(j+nu+1)) times the bracket at s = i, t = j
    std::vector<double> c;
    double peak = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double lc = k * std::log(x) - std::lgamma(k + 1.0) - std::lgamma(k + nu + 1.0);
        c.push_back((k % 2 ? -1.0 : 1.0) * std::exp(lc));
        peak = std::max(peak, std::fabs(c.back()));
        if (k > 4 && std::fabs(c.back()) * std::pow(k + nu + 1.0, 6) < 1e-25 * peak) break;
    }
    const int n = static_cast<int>(c.size());
    const double xn = std::pow(x, nu), v = nu;
    IdentityResidual r;
    // Neumaier summation keeps the residual at the rounding level of the largest term
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double s = i, t = j;
            const double P = cal_p(s, t, nu);
            const double q = s * s + t * t + v * s - s * t;
            const double a = (s + v) * (s + v) - t * t;
            double b = 0.0;
            if (which == 1) {
                b = P / x;
            } else if (which == 2) {
                b = P * a / (x * x) - q / x;
            } else {
                const double quart = a * a - 2.0 * ((s + v) * (s + v) + t * t) + 1.0;
                b = P * quart * (as_printed ? 1.0 : 0.5) / (x * x * x) - q * a / (x * x);
            }
            const double term = c[i] * c[j] * xn * b;
            r.largest_term = std::max(r.largest_term, std::fabs(term));
            const double tsum = sum + term;
            comp += std::fabs(sum) >= std::fabs(term) ? (sum - tsum) + term : (term - tsum) + sum;
            sum = tsum;
        }
    }
    r.residual = sum + comp;
    return r;
}

double rho_micro_bessel(int nu, double x) {
    if (!(x > 0.0)) throw DomainError("rho_micro_bessel: x must be positive");
    // half the one-point function: the unfolding that tends to 1/pi
    return 0.5 * x * x * x * bessel_density(nu, x * x);
}

double rho_micro_interp(const InterpParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("rho_micro_interp: x must be positive");
    return 0.5 * x * x * x * interp_density(p, x * x);
}

}  // namespace hek
