#include "hek/suites.hpp"

#include "hek/ensemble.hpp"
#include "hek/finite_kernel.hpp"
#include "hek/parallel.hpp"
#include "hek/quadrature.hpp"
#include "hek/specfun.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hek {

nlohmann::json SuiteOptions::to_json() const {
    return {{"eps", trunc.eps},
            {"kmax", trunc.k_max},
            {"mb_offset", mb.offset},
            {"mb_step", mb.step},
            {"mb_cutoff", mb.cutoff},
            {"seed", seed}};
}

SlopeFit loglog_slope(const std::vector<double>& n, const std::vector<double>& err) {
    if (n.size() != err.size() || n.size() < 2) throw std::invalid_argument("loglog_slope needs >= 2 matching points");
    const double m = static_cast<double>(n.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = std::log(n[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    SlopeFit f;
    f.slope = (m * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / m;
    if (n.size() > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            const double r = std::log(err[i]) - f.intercept - f.slope * std::log(n[i]);
            rss += r * r;
        }
        f.stderr_slope = std::sqrt(rss / (m - 2) * m / den);
    }
    return f;
}

namespace {

using Clock = std::chrono::steady_clock;

double rel(double a, double b) {
    const double s = std::max(std::fabs(a), std::fabs(b));
    return s > 0 ? std::fabs(a - b) / s : 0.0;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
    return s;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

CheckResult bound(double measured, double tol, std::string detail = {}) {
    CheckResult c;
    c.measured = measured;
    c.tolerance = tol;
    c.status = std::isfinite(measured) && measured <= tol ? CheckStatus::pass : CheckStatus::fail;
    c.detail = std::move(detail);
    return c;
}

CheckResult flag(bool ok, double measured, double tol, std::string detail) {
    CheckResult c;
    c.measured = measured;
    c.tolerance = tol;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.detail = std::move(detail);
    return c;
}

// ------------------------------------------------------------------ specfun

CheckResult wronskian(const SuiteOptions&) {
    double worst = 0;
    for (double x : {0.1, 1.0, 10.0, 100.0})
        for (int n = 0; n <= 50; ++n) {
            const double w = bessel_i_scaled(n, x) * bessel_k_scaled(n + 1, x) +
                             bessel_i_scaled(n + 1, x) * bessel_k_scaled(n, x);
            worst = std::max(worst, std::fabs(x * w - 1.0));
        }
    return bound(worst, 1e-10, "n <= 50, x in {0.1, 1, 10, 100}");
}

CheckResult bessel_j_recurrence(const SuiteOptions&) {
    double worst = 0;
    for (int nu = 1; nu <= 10; ++nu)
        for (int k = 1; k <= 400; ++k) {
            const double xi = 100.0 * k / 400.0, r = std::sqrt(xi), z = 2.0 * r;
            const double a = nu * bessel_j(nu, z), b = r * bessel_j(nu - 1, z), c = r * bessel_j(nu + 1, z);
            const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
            worst = std::max(worst, std::fabs(a - b - c) / scale);
        }
    return bound(worst, 1e-10, "nu = 1..10, 400 points xi in (0, 100]; relative to the largest term");
}

CheckResult wright_reduction(const SuiteOptions&) {
    double worst = 0;
    for (double a : {0.0, 0.5, 1.0, 2.0})
        for (int k = 1; k <= 400; ++k) {
            const double z = 20.0 * k / 400.0;
            const double lhs = wright_bessel(a + 1.0, 1.0, z * z / 4.0) * std::pow(z / 2.0, a);
            const double rhs = bessel_j(a, z);
            // relative to the local amplitude of J_a, so zeros of J_a do not inflate the error
            const double amp = std::max(std::fabs(rhs), std::min(1.0, std::sqrt(2.0 / (kPi * z))));
            worst = std::max(worst, std::fabs(lhs - rhs) / amp);
        }
    return bound(worst, 1e-10, "a in {0, 0.5, 1, 2}, 400 points z in (0, 20]");
}

CheckResult series_tail_bound(const SuiteOptions&) {
    const double eps = 1e-15;
    double worst = 0;
    bool converged = true;
    for (double a : {0.5, 1.0, 2.5})
        for (double b : {0.5, 1.0, 1.5})
            for (double x : {0.1, 1.0, 4.0}) {
                const SeriesResult s = wright_bessel_series(a, b, x, eps);
                converged = converged && s.converged;
                worst = std::max(worst, s.tail_bound / (eps * std::fabs(s.value)));
            }
    return flag(converged && worst <= 10.0, worst, 10.0, "tail bound in units of eps_rel |result|");
}

// --------------------------------------------------------------- hard edge

CheckResult residue_moments(const std::vector<MomentWeight>& weights) {
    double worst = 0;
    for (int nu : {0, 1, 2, 3})
        for (double xi : {0.1, 0.5, 1.0, 3.0, 10.0, 30.0})
            for (MomentWeight w : weights) worst = std::max(worst, rel(residue_j_moment(nu, w, xi), residue_j_closed(nu, w, xi)));
    return bound(worst, 1e-10, "nu = 0..3, xi in {0.1, 0.5, 1, 3, 10, 30}");
}

CheckResult residue_moments_basic(const SuiteOptions&) {
    return residue_moments({MomentWeight::one, MomentWeight::t, MomentWeight::t_tnu, MomentWeight::t_tnu_tnu1});
}

CheckResult residue_moments_further(const SuiteOptions&) {
    return residue_moments({MomentWeight::t2, MomentWeight::t2_tnu, MomentWeight::t2_tnu_tnu1});
}

CheckResult integral_identity(int which) {
    double worst = 0, printed = 0;
    for (int nu : {0, 1, 2})
        for (double x : {0.5, 1.0, 3.0}) {
            worst = std::max(worst, identity_residual(which, nu, x).relative());
            if (which == 3) printed = std::max(printed, identity_residual(3, nu, x, true).relative());
        }
    std::string detail = "(nu, x) in {0,1,2} x {0.5,1,3}; relative to the largest term";
    if (which == 3) detail += "; without the 1/2 on the first bracket the residual reaches " + fmt(printed);
    return bound(worst, 1e-8, detail);
}

CheckResult polynomial_forms(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double s = u(rng), t = u(rng);
        const int nu = static_cast<int>(rng() % 6);
        const double scale = std::pow(std::fabs(s) + std::fabs(t) + nu + 1.0, 3);
        worst = std::max(worst, std::fabs(cal_p(s, t, nu) - cal_p_expanded(s, t, nu)) / scale);
    }
    return bound(worst, 1e-13, "1000 random (s, t, nu); relative to (|s|+|t|+nu+1)^3");
}

CheckResult integrable_vs_double_sum(const SuiteOptions& opt) {
    const double xs[] = {0.5, 1.0, 2.0, 3.0, 4.0};
    double worst = 0;
    for (int nu : {0, 1})
        for (double g : {0.5, 1.0}) {
            const InterpParams p{nu, g, opt.trunc};
            for (double x : xs)
                for (double y : xs) {
                    if (x == y) continue;  // the diagonal has no x^2 - y^2 division in either form
                    worst = std::max(worst, rel(interp_kernel(p, x, y), interp_kernel_double_sum(p, x, y).value));
                }
        }
    return bound(worst, 1e-8, "5x5 grid {0.5,1,2,3,4}^2 off the diagonal, nu in {0,1}, g in {0.5,1}");
}

CheckResult f_residue_vs_kummer(const SuiteOptions& opt) {
    double worst = 0;
    for (int nu : {0, 1})
        for (double g : {0.5, 2.0})
            for (double y : {0.5, 1.0, 4.0}) {
                const InterpParams p{nu, g, opt.trunc};
                const FourFunctions a = f_funcs(p, y), b = f_funcs_mb(p, y);
                for (int i = 0; i < 4; ++i) worst = std::max(worst, rel(a.v[i].value(), b.v[i].value()));
            }
    return bound(worst, 1e-7, "(nu, g, y) in {0,1} x {0.5,2} x {0.5,1,4}, all four functions");
}

CheckResult small_g_diagonal_limit(const SuiteOptions& opt) {
    bool mono = true;
    double worst_final = 0;
    std::string detail;
    for (double x : {0.5, 1.0, 2.0}) {
        std::vector<double> e;
        for (double g : {1e-1, 1e-2, 1e-3}) e.push_back(rel(interp_density({0, g, opt.trunc}, x), bessel_density(0, x)));
        mono = mono && strictly_decreasing(e);
        worst_final = std::max(worst_final, e.back());
        detail += "x=" + fmt(x) + ": " + join(e) + "; ";
    }
    return flag(mono && worst_final <= 1e-2, worst_final, 1e-2, detail + "g = 1e-1, 1e-2, 1e-3, nu = 0");
}

CheckResult large_g_limit(const SuiteOptions& opt) {
    bool mono = true;
    double worst_final = 0;
    std::string detail;
    const double x = 0.5, y = 1.2;
    for (int nu : {0, 1}) {
        const double target = meijer_kernel(nu, 0, x, y);
        std::vector<double> e;
        for (double g : {1e1, 1e2, 1e3}) {
            const double v = g * interp_kernel({nu, g, opt.trunc}, 2 * std::sqrt(g * x), 2 * std::sqrt(g * y));
            e.push_back(rel(v, target));
        }
        mono = mono && strictly_decreasing(e);
        worst_final = std::max(worst_final, e.back());
        detail += "nu=" + std::to_string(nu) + ": " + join(e) + "; ";
    }
    return flag(mono && worst_final <= 1e-3, worst_final, 1e-3, detail + "g = 1e1, 1e2, 1e3 at (x, y) = (0.5, 1.2)");
}

CheckResult conjectured_asymptotics(const SuiteOptions& opt) {
    std::ostringstream os;
    double reported = NAN;
    for (double g : {0.1, 1.0}) {
        std::vector<double> xs, es;
        for (int i = 0; i < 41; ++i) {
            const double x = 25.0 * std::pow(16.0, i / 40.0);
            const double e = std::fabs(interp_density({0, g, opt.trunc}, x) / bessel_density(0, x) - 1.0);
            if (e > 0) {
                xs.push_back(x);
                es.push_back(e);
            }
        }
        const SlopeFit f = loglog_slope(xs, es);
        const double tq = boost::math::quantile(boost::math::students_t(static_cast<double>(xs.size() - 2)), 0.975);
        os << "g=" << g << ": exponent " << fmt(f.slope) << " 95% CI [" << fmt(f.slope - tq * f.stderr_slope) << ", "
           << fmt(f.slope + tq * f.stderr_slope) << "], C " << fmt(std::exp(f.intercept)) << ", max dev "
           << fmt(*std::max_element(es.begin(), es.end())) << "; ";
        if (g == 1.0) reported = f.slope;
    }
    CheckResult c;
    c.measured = reported;
    c.tolerance = -0.5;
    c.status = CheckStatus::reported;
    c.detail = os.str() + "fit of |S(x,x;g)/S_Bessel(x,x) - 1| ~ C x^p over 41 log-spaced x in [25, 400], nu = 0";
    return c;
}

// -------------------------------------------------------------- finite N

CheckResult biorthonormality(const SuiteOptions&) {
    double worst = 0;
    for (int nu : {0, 1, 3})
        for (double mu : {0.2, 0.5, 0.8}) {
            const CoupledParams p{7, nu, mu};
            for (int n = 0; n <= 6; ++n)
                for (int m = 0; m <= 6; ++m) {
                    const auto f = [&](double x) { return (p_n(p, n, x) * q_n(p, m, x)).value(); };
                    const double v = integrate_half_line(f, 1e-10, mu * mu).value;
                    worst = std::max(worst, std::fabs(v - (n == m ? 1.0 : 0.0)));
                }
        }
    return bound(worst, 1e-7, "n, m <= 6 at (nu, mu) in {0,1,3} x {0.2,0.5,0.8}");
}

CheckResult reproducing(const SuiteOptions&) {
    double worst = 0;
    for (double mu : {0.3, 0.7}) {
        const CoupledParams p{4, 1, mu};
        for (auto [x, y] : {std::pair{0.7, 1.3}, {0.2, 2.5}, {1.0, 1.0}}) {
            const auto f = [&](double z) { return kernel(p, x, z) * kernel(p, z, y); };
            worst = std::max(worst, rel(integrate_half_line(f, 1e-11, mu * mu).value, kernel(p, x, y)));
        }
    }
    return bound(worst, 1e-7, "N = 4, nu = 1, mu in {0.3, 0.7}");
}

CheckResult trace(const SuiteOptions&) {
    double worst = 0;
    for (auto [n, nu, mu] : {std::tuple{3, 1, 0.6}, {5, 0, 0.3}, {8, 2, 0.8}}) {
        const CoupledParams p{n, nu, mu};
        const double t = integrate_half_line([&](double y) { return kernel_diag(p, y); }, 1e-11, mu * mu).value;
        worst = std::max(worst, std::fabs(t - n) / n);
    }
    return bound(worst, 1e-6, "(N, nu, mu) in {(3,1,0.6), (5,0,0.3), (8,2,0.8)}");
}

CheckResult cd_vs_sum(const SuiteOptions&) {
    double worst = 0;
    for (int n = 2; n <= 10; ++n)
        for (int nu : {0, 2})
            for (double mu : {0.2, 0.4, 0.8})
                for (auto [x, y] : {std::pair{1.3, 0.7}, {0.05, 3.0}, {2.0, 2.2}}) {
                    const CoupledParams p{n, nu, mu};
                    worst = std::max(worst, rel(kernel(p, x, y), kernel_cd(p, x, y)));
                }
    return bound(worst, 1e-10, "N = 2..10, nu in {0,2}, mu in {0.2,0.4,0.8}, three off-diagonal points");
}

struct KernelDet {
    double det = 0.0;
    double hadamard = 0.0;  // product of row 1-norms, bounds |det|
};

KernelDet det_kernel(const CoupledParams& p, const std::vector<double>& ys, double conj) {
    const int n = static_cast<int>(ys.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = i == j ? kernel_diag(p, ys[i]) : kernel(p, ys[i], ys[j], conj * (std::sqrt(ys[i]) - std::sqrt(ys[j])));
    return {m.determinant(), m.cwiseAbs().rowwise().sum().prod()};
}

CheckResult det_vs_joint(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> u(0.05, 4.0);
    double worst = 0;
    for (int n : {2, 3})
        for (double mu : {0.4, 0.7})
            for (int trial = 0; trial < 5; ++trial) {
                const CoupledParams p{n, 1, mu};
                std::vector<double> ys(n);
                for (double& y : ys) y = u(rng);
                // the N-point correlation function is N! times the joint density
                worst = std::max(worst, rel(det_kernel(p, ys, 0.0).det / std::tgamma(n + 1.0), joint_density(p, ys)));
            }
    return bound(worst, 1e-8, "N in {2,3}, nu = 1, mu in {0.4,0.7}, 5 random tuples each; det compared after dividing by N!");
}

CheckResult gauge_determinants(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> u(0.05, 4.0);
    double worst = 0;
    for (int n : {2, 3, 4})
        for (int trial = 0; trial < 5; ++trial) {
            const CoupledParams p{n, 1, 0.5};
            std::vector<double> ys(n);
            for (double& y : ys) y = u(rng);
            const KernelDet ref = det_kernel(p, ys, 0.0);
            for (double c : {-1.0, 0.3, 2.0})
                worst = std::max(worst, std::fabs(det_kernel(p, ys, c).det - ref.det) / ref.hadamard);
        }
    return bound(worst, 1e-12, "gauge c(sqrt y_i - sqrt y_j), c in {-1, 0.3, 2}, N = 2..4; relative to the Hadamard bound");
}

// ----------------------------------------------------------- Meijer / MB

CheckResult offset_invariance(const SuiteOptions& opt) {
    double worst = 0;
    for (double z : {0.3, 1.3, 5.0}) {
        const double a = meijer_g_203(1.0, 0.5, 0.0, z, {-0.3, opt.mb.step, opt.mb.cutoff});
        const double b = meijer_g_203(1.0, 0.5, 0.0, z, {0.7, opt.mb.step, opt.mb.cutoff});
        worst = std::max(worst, rel(a, b));
    }
    for (int nu : {0, 1}) {
        const InterpParams p{nu, 2.0, opt.trunc};
        const FourFunctions a = f_funcs_mb(p, 1.0, {0.3, opt.mb.step, opt.mb.cutoff});
        const FourFunctions b = f_funcs_mb(p, 1.0, {0.7, opt.mb.step, opt.mb.cutoff});
        for (int i = 0; i < 4; ++i) worst = std::max(worst, rel(a.v[i].value(), b.v[i].value()));
    }
    return bound(worst, 1e-9, "G^{2,0}_{0,3} at offsets -0.3/0.7; Kummer-form F at 0.3/0.7");
}

CheckResult imaginary_residual(const SuiteOptions& opt) {
    double worst = 0;
    for (double x : {0.5, 1.0, 2.0})
        for (double y : {0.5, 1.5})
            for (double nu1 : {0.0, 1.0}) worst = std::max(worst, meijer_kernel_eval(nu1, 0.0, x, y, opt.mb).imag_residual);
    return bound(worst, 1e-12, "independent-product hard-edge kernel on a 3x2 grid, nu1 in {0,1}");
}

CheckResult line_vs_u_integral(const SuiteOptions& opt) {
    double worst = 0;
    for (double x : {0.5, 1.0, 2.0})
        for (double y : {0.5, 1.0, 2.0})
            worst = std::max(worst, rel(meijer_kernel_eval(1.0, 0.0, x, y, opt.mb).value, meijer_kernel_u_integral(1.0, 0.0, x, y)));
    return bound(worst, 1e-7, "(nu1, nu2) = (1, 0), 3x3 grid {0.5,1,2}^2");
}

CheckResult borodin_bessel_map(const SuiteOptions&) {
    double worst = 0;
    for (int nu : {0, 1, 2})
        for (auto [x, y] : {std::pair{0.9, 2.1}, {0.5, 1.5}, {3.0, 2.0}}) {
            const double mapped = 2.0 * std::pow(y / x, nu) / std::sqrt(x * y) * borodin_kernel(nu, 1.0, x, y);
            worst = std::max(worst, rel(bessel_kernel(nu, x, y), mapped));
        }
    return bound(worst, 1e-8, "theta = 1, nu in {0,1,2}; Bessel kernel normalised as the finite-N limit");
}

CheckResult borodin_meijer_relation(const SuiteOptions&) {
    double worst = 0;
    for (auto [x, y] : {std::pair{0.5, 1.0}, {1.0, 0.3}, {2.0, 2.5}})
        worst = std::max(worst, rel(4.0 * borodin_kernel(0.0, 0.5, 4 * x, 4 * y), meijer_kernel(0.0, 0.5, x, y)));
    return bound(worst, 1e-6, "M = 2, alpha = 0: 4 K(4x, 4y) against the independent-product kernel");
}

// -------------------------------------------------------------- ensemble

TabulatedCdf one_point_cdf(const CoupledParams& p) {
    return TabulatedCdf([p](double y) { return kernel_diag(p, y); }, p.n_size, 1.0);
}

CheckResult mc_chi_square(const SuiteOptions& opt) {
    double worst_p = 1.0;
    std::string detail;
    int idx = 0;
    for (auto [n, nu, mu] : {std::tuple{2, 0, 0.3}, {3, 1, 0.6}, {4, 2, 0.8}}) {
        const CoupledParams p{n, nu, mu};
        const SampleBatch b = sample_coupled(n, n + nu, mu, opt.seed + 10 + idx++, 20000);
        const ChiSquare c = chi_square_equiprobable(b, one_point_cdf(p), 30);
        worst_p = std::min(worst_p, c.p_value);
        detail += "(" + std::to_string(n) + "," + std::to_string(nu) + "," + fmt(mu) + ") p=" + fmt(c.p_value) + "; ";
    }
    return flag(worst_p > 1e-3, worst_p, 1e-3, detail + "30 equiprobable bins, 2e4 samples; measured = smallest p-value");
}

CheckResult mc_linear_statistic(const SuiteOptions& opt) {
    const CoupledParams p{3, 1, 0.6};
    const SampleBatch b = sample_coupled(3, 4, 0.6, opt.seed + 20, 20000);
    double s1 = 0, s2 = 0;
    for (const auto& s : b.samples) {
        double t = 0;
        for (double v : s) t += v;
        s1 += t;
        s2 += t * t;
    }
    const double n = static_cast<double>(b.samples.size());
    const double mean = s1 / n, se = std::sqrt((s2 / n - mean * mean) / (n - 1));
    const double exact = integrate_half_line([&](double y) { return y * kernel_diag(p, y); }, 1e-11, 1.0).value;
    const double z = std::fabs(mean - exact) / se;
    return bound(z, 3.0, "(N, nu, mu) = (3, 1, 0.6), 2e4 samples: MC " + fmt(mean) + " exact " + fmt(exact) +
                             "; measured in standard errors");
}

CheckResult mc_seed_independence(const SuiteOptions& opt) {
    std::vector<std::vector<double>> pooled;
    for (int k = 0; k < 3; ++k) pooled.push_back(pooled_values(sample_coupled(2, 2, 0.3, opt.seed + 30 + k, 10000)));
    double worst_p = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            worst_p = std::min(worst_p, ks_pvalue(ks_two_sample(pooled[i], pooled[j]), 10000.0 * 10000.0 / 20000.0));
    return flag(worst_p > 1e-3, worst_p, 1e-3, "three seeds, (N, nu, mu) = (2, 0, 0.3), 1e4 samples each; pairwise two-sample KS");
}

// --------------------------------------------------------------- harness

CheckResult csv_round_trip(const SuiteOptions& opt) {
    CsvTable t;
    t.meta = {{"kind", "round-trip"}, {"options", opt.to_json()}};
    t.columns = {"x", "y", "K"};
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = std::ldexp(u(rng), static_cast<int>(rng() % 600) - 300);
        t.rows.push_back({x, 1.0 / (i + 1.0), bessel_kernel(0, 0.5 + i * 0.01, 1.0)});
    }
    t.rows.push_back({0.0, -0.0, 5e-324});
    std::stringstream ss;
    write_csv(ss, t);
    const CsvTable back = read_csv(ss);
    long mismatches = back.meta == t.meta && back.columns == t.columns && back.rows.size() == t.rows.size() ? 0 : 1;
    for (std::size_t i = 0; !mismatches && i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j) mismatches += back.rows[i][j] != t.rows[i][j];
    return bound(static_cast<double>(mismatches), 0.0, "201 rows including subnormals; count of values not bit-identical");
}

CheckResult determinism(const SuiteOptions& opt) {
    const SampleBatch a = sample_coupled(3, 5, 0.4, opt.seed + 4, 500);
    const SampleBatch b = sample_coupled(3, 5, 0.4, opt.seed + 4, 500);
    const bool same_hash = config_hash(opt.to_json()) == config_hash(opt.to_json());
    const double diff = a.samples == b.samples && same_hash ? 0.0 : 1.0;
    return bound(diff, 0.0, "repeated sampling with one seed and repeated config hashing are bit-identical");
}

// ------------------------------------------------------- limit studies

// kappa = 2: mu = g/N^2, arguments x^2/4N^2, conjugation e^{-(x-y)/(2N mu)} as a gauge exponent.
CheckResult kappa2_bessel(const SuiteOptions&) {
    const double g = 1.0;
    const int nu = 1;
    const double pts[] = {0.5, 1.0, 2.0};
    std::vector<double> errs;
    for (int n : {50, 100, 200}) {
        const double mu = g / (double(n) * n);
        const CoupledParams p{n, nu, mu};
        double sup = 0;
        for (double x : pts)
            for (double y : pts) {
                const double a = x * x / (4.0 * n * n), b = y * y / (4.0 * n * n);
                const double k = (x == y ? kernel_diag(p, a) : kernel(p, a, b, -(x - y) / (2.0 * n * mu))) / (double(n) * n);
                sup = std::max(sup, std::fabs(k - bessel_kernel(nu, x, y)));
            }
        errs.push_back(sup);
    }
    const SlopeFit f = loglog_slope({50, 100, 200}, errs);
    return flag(strictly_decreasing(errs), errs.back(), errs.front(),
                "sup errors over {0.5,1,2}^2 at N = 50, 100, 200: " + join(errs) + "; fitted order " + fmt(-f.slope) +
                    "; g = 1, nu = 1");
}

CheckResult kappa1_interpolating(const SuiteOptions& opt) {
    const double pts[] = {0.5, 1.0, 1.5, 2.0};
    double worst_dev = 0;
    std::string detail;
    for (double g : {0.5, 2.0}) {
        std::vector<double> errs;
        const InterpParams ip{1, g, opt.trunc};
        for (int n : {50, 100, 200}) {
            const CoupledParams p{n, 1, g / n};
            double sup = 0;
            for (double x : pts)
                for (double y : pts) {
                    const double a = x * x / (4.0 * n * n), b = y * y / (4.0 * n * n);
                    const double k = (x == y ? kernel_diag(p, a) : kernel(p, a, b)) / (double(n) * n);
                    const double s = x == y ? interp_density(ip, x) : interp_kernel(ip, x, y);
                    sup = std::max(sup, std::fabs(k - s));
                }
            errs.push_back(sup);
        }
        const SlopeFit f = loglog_slope({50, 100, 200}, errs);
        worst_dev = std::max(worst_dev, std::fabs(f.slope + 1.0));
        detail += "g=" + fmt(g) + ": " + join(errs) + " slope " + fmt(f.slope) + "; ";
    }
    return bound(worst_dev, 0.3, detail + "4x4 grid {0.5,1,1.5,2}^2, nu = 1; measured = |slope + 1|");
}

// mu = g N^{-kappa}, arguments mu x / N, kernel scaled by mu / N.
CheckResult kappa_small_independent(const SuiteOptions&) {
    const double g = 0.5;
    const int nu = 1;
    const std::pair<double, double> pts[] = {{1.0, 2.0}, {0.5, 0.5}, {2.0, 0.7}};
    bool mono = true;
    double worst_final = 0;
    std::string detail;
    for (double kappa : {0.0, 0.5}) {
        std::vector<double> errs;
        for (int n : {50, 100, 200}) {
            const double mu = g * std::pow(n, -kappa);
            const CoupledParams p{n, nu, mu};
            double sup = 0;
            for (auto [x, y] : pts) {
                const double k = (x == y ? kernel_diag(p, mu * x / n) : kernel(p, mu * x / n, mu * y / n)) * mu / n;
                sup = std::max(sup, std::fabs(k - meijer_kernel(nu, 0, x, y)));
            }
            errs.push_back(sup);
        }
        mono = mono && strictly_decreasing(errs);
        worst_final = std::max(worst_final, errs.back());
        detail += "kappa=" + fmt(kappa) + ": " + join(errs) + "; ";
    }
    return flag(mono, worst_final, NAN, detail + "g = 0.5, nu = 1; pass = errors decrease over N = 50, 100, 200");
}

// ---------------------------------------------------------------- extras

CheckResult single_matrix_ks(const SuiteOptions& opt) {
    const CoupledParams p{1, 0, 0.5};
    const SampleBatch b = sample_coupled(1, 1, 0.5, opt.seed + 40, 100000);
    const TabulatedCdf cdf = one_point_cdf(p);
    const double d = ks_distance(b, [&](double y) { return cdf(y); });
    return bound(d, ks_critical(0.01, 1e5), "N = M = 1, mu = 0.5, 1e5 samples; tolerance = 1% critical value");
}

CheckResult large_g_transition(const SuiteOptions& opt) {
    const double g = 1e3, x = 0.5, y = 1.2;
    double worst = 0;
    for (int nu : {0, 1, 2}) {
        const double v = g * interp_kernel({nu, g, opt.trunc}, 2 * std::sqrt(g * x), 2 * std::sqrt(g * y));
        worst = std::max(worst, rel(v, meijer_kernel(nu, 0, x, y)));
    }
    return bound(worst, 1e-3, "g = 1e3, (x, y) = (0.5, 1.2), nu in {0,1,2}; g S(2 sqrt(gx), 2 sqrt(gy)) against S_Ind");
}

CheckResult small_g_diagonal(const SuiteOptions& opt) {
    double worst = 0;
    for (int nu : {0, 1})
        for (double x : {0.5, 1.0, 2.0}) worst = std::max(worst, rel(interp_density({nu, 1e-3, opt.trunc}, x), bessel_density(nu, x)));
    return bound(worst, 1e-2, "g = 1e-3, x in {0.5,1,2}, nu in {0,1}");
}

CheckResult small_g_gauge_product(const SuiteOptions& opt) {
    double worst = 0;
    for (int nu : {0, 1})
        for (auto [x, y] : {std::pair{0.5, 1.0}, {1.0, 2.0}, {0.7, 1.9}}) {
            const InterpParams p{nu, 1e-3, opt.trunc};
            worst = std::max(worst, rel(interp_kernel(p, x, y) * interp_kernel(p, y, x),
                                        bessel_kernel(nu, x, y) * bessel_kernel(nu, y, x)));
        }
    return bound(worst, 1e-2, "S(x,y)S(y,x) at g = 1e-3 against the Bessel product; nu in {0,1}");
}

double mean_over(const std::function<double(double)>& f, double a, double b) {
    return integrate_pieces(f, {10.0, 12.5, 15.0, 17.5, 20.0}, 1e-9).value / (b - a);
}

CheckResult bessel_unfolded_mean(const SuiteOptions&) {
    double worst = 0;
    for (int nu : {0, 2}) {
        const double m = mean_over([nu](double x) { return rho_micro_bessel(nu, x); }, 10.0, 20.0);
        worst = std::max(worst, std::fabs(m * kPi - 1.0));
    }
    return bound(worst, 0.02, "mean over [10, 20] relative to 1/pi, nu in {0,2}");
}

CheckResult mb_unfolded_mean(const SuiteOptions&) {
    double worst = 0;
    std::string detail;
    for (double theta : {0.8, 1.2}) {
        const double m = mean_over([theta](double x) { return rho_micro_mb(0.0, theta, x); }, 10.0, 20.0);
        worst = std::max(worst, std::fabs(m * kPi - 1.0));
        detail += "theta=" + fmt(theta) + ": pi*mean " + fmt(m * kPi) + "; ";
    }
    return bound(worst, 0.02, detail + "alpha = 0, mean over [10, 20]");
}

CheckResult figure1_tracking(const SuiteOptions& opt) {
    double worst = 0;
    std::string detail;
    for (int nu : {0, 2}) {
        std::vector<double> xs(181), dev(xs.size()), diff(xs.size()), ref(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.5 + 4.5 * static_cast<double>(i) / (xs.size() - 1);
        parallel_for(xs.size(), [&](std::size_t i) {
            ref[i] = rho_micro_bessel(nu, xs[i]);
            diff[i] = std::fabs(rho_micro_interp({nu, 0.1, opt.trunc}, xs[i]) - ref[i]);
            dev[i] = diff[i] / ref[i];
        });
        const auto at = std::max_element(dev.begin(), dev.end()) - dev.begin();
        worst = std::max(worst, dev[at]);
        detail += "nu=" + std::to_string(nu) + ": max rel " + fmt(dev[at]) + " at x=" + fmt(xs[at]) + ", max abs " +
                  fmt(*std::max_element(diff.begin(), diff.end())) + "; ";
    }
    return bound(worst, 0.02, detail + "g = 0.1 against g = 0, 181 points on [0.5, 5], relative sup-norm");
}

struct Entry {
    CheckSpec spec;
    std::function<CheckResult(const SuiteOptions&)> fn;
};

const std::vector<Entry>& verify_entries() {
    static const std::vector<Entry> entries = {
        {{"specfun.wronskian", "Wronskian of the modified Bessel functions I_n, K_n", "identities"}, wronskian},
        {{"specfun.bessel_j_recurrence", "recursion formula for the Bessel function", "identities"}, bessel_j_recurrence},
        {{"specfun.wright_bessel_reduction", "Wright's generalised Bessel function reduces to J_a", "identities"}, wright_reduction},
        {{"specfun.series_tail_bound", "series truncation reports a tail bound", "identities"}, series_tail_bound},
        {{"hard_edge.residue_moments", "simple residue calculations give Bessel-J closed forms", "identities"}, residue_moments_basic},
        {{"hard_edge.residue_moments_further", "three further identities expressing Bessel moments", "identities"}, residue_moments_further},
        {{"hard_edge.integral_identity_1", "integral identities of the small-g expansion, order g", "identities"},
         [](const SuiteOptions&) { return integral_identity(1); }},
        {{"hard_edge.integral_identity_2", "integral identities of the small-g expansion, order g^2", "identities"},
         [](const SuiteOptions&) { return integral_identity(2); }},
        {{"hard_edge.integral_identity_3", "integral identities of the small-g expansion, order g^3", "identities"},
         [](const SuiteOptions&) { return integral_identity(3); }},
        {{"hard_edge.polynomial_forms", "two equivalent forms of the polynomial P(s,t,nu)", "identities"}, polynomial_forms},
        {{"harness.csv_round_trip", "CSV outputs parse back losslessly", "identities"}, csv_round_trip},
        {{"harness.determinism", "runs are deterministic given config and seed", "identities"}, determinism},

        {{"finite.biorthonormality", "biorthogonal functions P_n, Q_m", "representations"}, biorthonormality},
        {{"finite.reproducing", "reproducing property of the correlation kernel", "representations"}, reproducing},
        {{"finite.trace", "trace of the rank-N kernel", "representations"}, trace},
        {{"finite.cd_vs_sum", "Christoffel-Darboux type formula for the correlation kernel", "representations"}, cd_vs_sum},
        {{"finite.det_vs_joint_density", "squared singular values form a determinantal point process", "representations"}, det_vs_joint},
        {{"finite.gauge_determinants", "conjugation leaves correlation determinants invariant", "representations"}, gauge_determinants},
        {{"hard_edge.integrable_vs_double_sum", "integrable form of the interpolating kernel", "representations"}, integrable_vs_double_sum},
        {{"hard_edge.f_residue_vs_kummer", "Kummer-function representation of F_1..F_4", "representations"}, f_residue_vs_kummer},
        {{"meijer.offset_invariance", "vertical-line integrals between poles", "representations"}, offset_invariance},
        {{"meijer.imaginary_residual", "real-valued Mellin-Barnes results", "representations"}, imaginary_residual},
        {{"meijer.line_vs_u_integral", "independent-product kernel as a definite integral of Meijer G", "representations"}, line_vs_u_integral},
        {{"borodin.bessel_map", "Wright-Bessel kernel at theta = 1 against the Bessel kernel", "representations"}, borodin_bessel_map},
        {{"borodin.meijer_relation", "Wright-Bessel kernel with theta = 1/M against the Meijer kernel, M = 2", "representations"},
         borodin_meijer_relation},
        {{"ensemble.chi_square_one_point", "one-point function of the determinantal point process", "representations"}, mc_chi_square},
        {{"ensemble.linear_statistic_mean", "mean of the sum of squared singular values", "representations"}, mc_linear_statistic},
        {{"ensemble.seed_independence", "distinct seeds give independent streams", "representations"}, mc_seed_independence},

        {{"hard_edge.small_g_diagonal_limit", "diagonal of the interpolating kernel tends to the Bessel density as g -> 0", "limits"},
         small_g_diagonal_limit},
        {{"hard_edge.large_g_limit", "interpolation to the independent-product kernel as g -> infinity", "limits"}, large_g_limit},
        {{"hard_edge.conjectured_asymptotics", "conjectured large-x asymptotics of the interpolating density", "limits"},
         conjectured_asymptotics},
        {{"limits.kappa2_bessel", "weak coupling mu = g/N^2: finite-N kernel tends to the Bessel kernel", "limits"}, kappa2_bessel},
        {{"limits.kappa1_interpolating", "strong coupling mu = g/N: finite-N kernel tends to the interpolating kernel", "limits"},
         kappa1_interpolating},
        {{"limits.kappa_small_independent", "mu = g N^-kappa, kappa < 1: finite-N kernel tends to the independent-product kernel", "limits"},
         kappa_small_independent},
    };
    return entries;
}

const std::vector<Entry>& extra_entries() {
    static const std::vector<Entry> entries = {
        {{"ensemble.single_matrix_ks", "exact N = 1 density of the coupled product", ""}, single_matrix_ks},
        {{"hard_edge.large_g_transition", "interpolation to the independent-product kernel at g = 1e3", ""}, large_g_transition},
        {{"hard_edge.small_g_diagonal", "diagonal small-g limit at g = 1e-3", ""}, small_g_diagonal},
        {{"hard_edge.small_g_gauge_product", "gauge-invariant off-diagonal small-g limit", ""}, small_g_gauge_product},
        {{"densities.bessel_unfolded_mean", "unfolded Bessel density asymptotically becomes 1/pi", ""}, bessel_unfolded_mean},
        {{"densities.mb_unfolded_mean", "unfolded Muttalib-Borodin density normalised to 1/pi", ""}, mb_unfolded_mean},
        {{"densities.small_g_tracks_bessel", "unfolded densities at g = 0.1 and g = 0 essentially coincide", ""}, figure1_tracking},
    };
    return entries;
}

const Entry* find_entry(const std::string& id) {
    for (const auto* list : {&verify_entries(), &extra_entries()})
        for (const auto& e : *list)
            if (e.spec.id == id) return &e;
    return nullptr;
}

std::vector<CheckSpec> specs_of(const std::vector<Entry>& entries) {
    std::vector<CheckSpec> out;
    for (const auto& e : entries) out.push_back(e.spec);
    return out;
}

}  // namespace

const std::vector<CheckSpec>& verify_registry() {
    static const std::vector<CheckSpec> specs = specs_of(verify_entries());
    return specs;
}

const std::vector<CheckSpec>& extra_registry() {
    static const std::vector<CheckSpec> specs = specs_of(extra_entries());
    return specs;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"identities", "limits", "representations", "all"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

CheckResult run_check(const std::string& id, const SuiteOptions& opt) {
    const Entry* e = find_entry(id);
    if (!e) throw std::out_of_range("unknown check id: " + id);
    const auto t0 = Clock::now();
    CheckResult r;
    try {
        r = e->fn(opt);
    } catch (const std::exception& ex) {
        r = CheckResult{};
        r.measured = NAN;
        r.tolerance = NAN;
        r.status = CheckStatus::fail;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.id = e->spec.id;
    r.anchor = e->spec.anchor;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& opt) {
    if (!is_suite(name)) throw std::invalid_argument("unknown suite: " + name);
    opt.trunc.validate();
    opt.mb.validate();
    std::vector<const CheckSpec*> chosen;
    for (const auto& s : verify_registry())
        if (name == "all" || s.suite == name) chosen.push_back(&s);
    std::vector<CheckResult> results(chosen.size());
    parallel_for(chosen.size(), [&](std::size_t i) { results[i] = run_check(chosen[i]->id, opt); });

    VerificationReport rep;
    rep.suite = name;
    rep.config = {{"suite", name}, {"options", opt.to_json()}};
    rep.checks = std::move(results);
    return rep;
}

}  // namespace hek
