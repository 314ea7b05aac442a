// hek: command-line front end for kernels, densities, Monte Carlo comparisons,
// verification suites and parameter sweeps.

#include "hek/ensemble.hpp"
#include "hek/finite_kernel.hpp"
#include "hek/hard_edge.hpp"
#include "hek/meijer.hpp"
#include "hek/parallel.hpp"
#include "hek/quadrature.hpp"
#include "hek/report.hpp"
#include "hek/suites.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace {

using namespace hek;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::string type;
    int nu = 0;
    double nu2 = 0.0;
    double mu = 0.5;
    double g = 1.0;
    int n_size = 1;
    double alpha = 0.0;
    double theta = 1.0;
    std::string grid;
    bool log_grid = false;
    bool diag = false;
    std::uint64_t seed = 20241016;
    std::string out;
    std::string suite = "all";
    double eps = 1e-14;
    int kmax = 400;
    double mb_step = 0.05;
    double mb_cutoff = 40.0;
    long samples = 20000;
    int bins = 30;
    std::string ensemble = "coupled";
    std::string batch_out;
    std::string diagnostic;
    double x = 1.0;
    double y = 2.0;
    int figure = 0;
    bool json = false;

    Truncation trunc() const { return {eps, kmax}; }
    MBQuadSpec mb(double offset) const { return {offset, mb_step, mb_cutoff}; }

    nlohmann::json to_json() const {
        return {{"command", command}, {"type", type},       {"nu", nu},           {"nu2", nu2},
                {"mu", mu},           {"g", g},             {"n_size", n_size},   {"alpha", alpha},
                {"theta", theta},     {"grid", grid},       {"log_grid", log_grid}, {"diag", diag},
                {"seed", seed},       {"suite", suite},     {"eps", eps},         {"kmax", kmax},
                {"mb_step", mb_step}, {"mb_cutoff", mb_cutoff}, {"samples", samples}, {"bins", bins},
                {"ensemble", ensemble}, {"diagnostic", diagnostic}, {"x", x}, {"y", y}, {"figure", figure}};
    }
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void validate_common(const Config& c) {
    require(c.nu >= 0, "--nu must be a nonnegative integer");
    require(c.eps > 0 && c.eps <= 1e-6, "--eps must lie in (0, 1e-6]");
    require(c.kmax >= 16, "--kmax must be at least 16");
    require(c.mb_step > 0 && c.mb_step <= 0.1, "--mb-step must lie in (0, 0.1]");
    require(c.mb_cutoff > 0, "--mb-cutoff must be positive");
}

std::vector<double> parse_grid(const std::string& spec, bool log_spaced) {
    require(!spec.empty(), "--grid lo:hi:count is required");
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    require(parts.size() == 3, "--grid must have the form lo:hi:count, got '" + spec + "'");
    double lo = 0, hi = 0;
    long count = 0;
    try {
        std::size_t a = 0, b = 0, k = 0;
        lo = std::stod(parts[0], &a);
        hi = std::stod(parts[1], &b);
        count = std::stol(parts[2], &k);
        require(a == parts[0].size() && b == parts[1].size() && k == parts[2].size(), "trailing characters");
    } catch (const std::exception&) {
        throw ConfigError("--grid must have the form lo:hi:count with numeric fields, got '" + spec + "'");
    }
    require(count >= 1, "--grid count must be at least 1 (empty grid)");
    require(count <= 1000000, "--grid count above 1e6");
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "--grid needs finite lo <= hi");
    if (log_spaced) require(lo > 0, "--log-grid needs lo > 0");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = log_spaced ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return v;
}

CsvTable make_table(const Config& c, std::vector<std::string> columns) {
    CsvTable t;
    const nlohmann::json cfg = c.to_json();
    t.meta = {{"config", cfg}, {"config_hash", config_hash(cfg)}, {"git_describe", HEK_GIT_DESCRIBE}};
    t.columns = std::move(columns);
    return t;
}

void emit(const Config& c, const CsvTable& t) {
    if (c.out.empty() || c.out == "-")
        write_csv(std::cout, t);
    else
        write_csv_file(c.out, t);
}

// ------------------------------------------------------------------ kernel

std::function<double(double, double)> kernel_fn(const Config& c) {
    const std::string& k = c.type;
    if (k == "finite-coupled" || k == "laguerre" || k == "finite-independent") {
        require(c.n_size >= 1, "--n-size must be at least 1");
    }
    if (k == "finite-coupled" || k == "laguerre") require(c.mu > 0 && c.mu < 1, "--mu must lie strictly inside (0, 1)");
    if (k == "finite-coupled") {
        const CoupledParams p{c.n_size, c.nu, c.mu};
        return [p](double x, double y) { return x == y ? kernel_diag(p, x) : kernel(p, x, y); };
    }
    if (k == "interp") {
        require(c.g > 0, "--g must be positive");
        const InterpParams p{c.nu, c.g, c.trunc()};
        return [p](double x, double y) { return x == y ? interp_density(p, x) : interp_kernel(p, x, y); };
    }
    if (k == "bessel") return [nu = c.nu](double x, double y) { return bessel_kernel(nu, x, y); };
    if (k == "meijer") {
        require(c.nu2 > -1, "--nu2 must exceed -1");
        const MBQuadSpec spec = c.mb(-0.5);
        const double nu1 = c.nu, nu2 = c.nu2, eps = c.eps;
        const int kmax = c.kmax;
        return [=](double x, double y) { return meijer_kernel_eval(nu1, nu2, x, y, spec, eps, kmax).value; };
    }
    if (k == "borodin") {
        require(c.alpha > -1, "--alpha must exceed -1");
        require(c.theta > 0, "--theta must be positive");
        return [a = c.alpha, t = c.theta](double x, double y) { return borodin_kernel(a, t, x, y); };
    }
    if (k == "laguerre")
        return [n = c.n_size, nu = c.nu, mu = c.mu](double x, double y) { return laguerre_kernel(n, nu, x, y, mu); };
    if (k == "finite-independent")
        return [n = c.n_size, nu = c.nu](double x, double y) { return finite_independent_kernel(n, nu, x, y); };
    throw ConfigError("--type must be one of finite-coupled, interp, bessel, meijer, borodin, laguerre, finite-independent");
}

int cmd_kernel(const Config& c) {
    validate_common(c);
    const auto f = kernel_fn(c);
    const auto grid = parse_grid(c.grid, c.log_grid);
    for (double v : grid) require(v > 0, "kernel arguments must be positive; adjust --grid");
    std::vector<std::pair<double, double>> pts;
    if (c.diag) {
        for (double x : grid) pts.emplace_back(x, x);
    } else {
        for (double x : grid)
            for (double y : grid) pts.emplace_back(x, y);
    }
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { vals[i] = f(pts[i].first, pts[i].second); });
    CsvTable t = make_table(c, {"x", "y", "K"});
    for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({pts[i].first, pts[i].second, vals[i]});
    emit(c, t);
    return kExitPass;
}

// ----------------------------------------------------------------- density

int cmd_density(const Config& c) {
    validate_common(c);
    const auto xs = parse_grid(c.grid.empty() && c.figure ? std::string("0.05:5:100") : c.grid, c.log_grid);
    for (double v : xs) require(v > 0, "density arguments must be positive; adjust --grid");
    std::vector<std::string> cols{"x"};
    std::vector<std::function<double(double)>> fns;
    if (c.figure == 1) {
        for (int nu : {0, 2})
            for (double g : {0.0, 0.1, 1.0}) {
                cols.push_back("nu" + std::to_string(nu) + "_g" + (g == 0 ? std::string("0") : g == 0.1 ? "0.1" : "1"));
                if (g == 0)
                    fns.push_back([nu](double x) { return rho_micro_bessel(nu, x); });
                else
                    fns.push_back([nu, g, tr = c.trunc()](double x) { return rho_micro_interp({nu, g, tr}, x); });
            }
    } else if (c.figure == 2) {
        require(c.alpha > -1, "--alpha must exceed -1");
        for (double th : {0.8, 1.0, 1.2}) {
            cols.push_back(th == 1.0 ? "theta1" : th < 1 ? "theta0.8" : "theta1.2");
            fns.push_back([a = c.alpha, th](double x) { return rho_micro_mb(a, th, x); });
        }
    } else {
        require(c.figure == 0, "--figure must be 1 or 2");
        cols.push_back("rho");
        if (c.type == "rho-micro-bessel") {
            fns.push_back([nu = c.nu](double x) { return rho_micro_bessel(nu, x); });
        } else if (c.type == "rho-micro-interp") {
            require(c.g > 0, "--g must be positive");
            fns.push_back([p = InterpParams{c.nu, c.g, c.trunc()}](double x) { return rho_micro_interp(p, x); });
        } else if (c.type == "rho-micro-mb") {
            require(c.alpha > -1 && c.theta > 0, "--alpha must exceed -1 and --theta must be positive");
            fns.push_back([a = c.alpha, t = c.theta](double x) { return rho_micro_mb(a, t, x); });
        } else if (c.type == "finite-one-point") {
            require(c.n_size >= 1 && c.mu > 0 && c.mu < 1, "finite-one-point needs --n-size >= 1 and --mu in (0, 1)");
            fns.push_back([p = CoupledParams{c.n_size, c.nu, c.mu}](double x) { return kernel_diag(p, x); });
        } else {
            throw ConfigError("--type must be one of rho-micro-bessel, rho-micro-interp, rho-micro-mb, finite-one-point");
        }
    }
    std::vector<std::vector<double>> rows(xs.size(), std::vector<double>(cols.size()));
    parallel_for(xs.size() * fns.size(), [&](std::size_t k) {
        const std::size_t i = k / fns.size(), j = k % fns.size();
        rows[i][0] = xs[i];
        rows[i][j + 1] = fns[j](xs[i]);
    });
    CsvTable t = make_table(c, cols);
    t.rows = std::move(rows);
    emit(c, t);
    return kExitPass;
}

// -------------------------------------------------------------- mc-compare

void print_report(const Config& c, const VerificationReport& r) {
    if (c.json)
        std::cout << r.to_json().dump(2) << "\n";
    else
        std::cout << r.to_text();
}

int cmd_mc_compare(const Config& c) {
    validate_common(c);
    require(c.n_size >= 1 && c.n_size <= kMaxEnsembleN, "--n-size must lie in [1, 64]");
    require(c.samples >= 1 && c.samples <= kMaxSamples, "--samples must lie in [1, 1e6]");
    require(c.bins >= 2, "--bins must be at least 2");
    require(c.ensemble == "coupled" || c.ensemble == "independent", "--ensemble must be coupled or independent");
    if (c.ensemble == "coupled") require(c.mu > 0 && c.mu < 1, "--mu must lie strictly inside (0, 1)");

    SampleBatch batch;
    std::function<double(double)> density;
    try {
        if (c.ensemble == "coupled") {
            batch = sample_coupled(c.n_size, c.n_size + c.nu, c.mu, c.seed, c.samples);
            density = [p = CoupledParams{c.n_size, c.nu, c.mu}](double y) { return kernel_diag(p, y); };
        } else {
            batch = sample_independent(c.n_size, c.n_size + c.nu, c.seed, c.samples);
            density = [n = c.n_size, nu = c.nu](double y) { return finite_independent_kernel(n, nu, y, y); };
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sampler: ") + e.what());
    }
    if (!c.batch_out.empty()) save_batch(batch, c.batch_out);

    const TabulatedCdf cdf(density, c.n_size, 1.0);
    const ChiSquare chi = chi_square_equiprobable(batch, cdf, c.bins);
    const double ks = ks_distance(batch, [&](double y) { return cdf(y); });
    const double ks_p = ks_pvalue(ks, static_cast<double>(c.samples));

    VerificationReport rep;
    rep.suite = "mc-compare";
    rep.config = c.to_json();
    rep.add_flag("mc.chi_square", "one-point function of the determinantal point process", chi.p_value > 1e-3, chi.p_value,
                 1e-3, "statistic " + format_double(chi.statistic) + ", dof " + std::to_string(chi.dof) + "; measured = p-value");
    rep.add_flag("mc.ks", "pooled one-point marginal against the exact CDF", ks_p > 1e-3, ks_p, 1e-3,
                 "distance " + format_double(ks) + ", n_eff = samples; measured = p-value");
    rep.add_reported("mc.seed", "seed echo", static_cast<double>(c.seed), std::to_string(c.seed));

    if (!c.out.empty()) {
        std::vector<double> edges{0.0};
        for (int i = 1; i < c.bins; ++i) edges.push_back(cdf.quantile(static_cast<double>(i) / c.bins));
        edges.push_back(cdf.upper());
        const Histogram h = empirical_density(batch, edges);
        const auto emp = h.density();
        CsvTable t = make_table(c, {"lo", "hi", "empirical", "exact", "stderr"});
        t.meta["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
        t.meta["ks"] = {{"distance", ks}, {"p_value", ks_p}};
        const double n = static_cast<double>(c.samples);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double w = edges[i + 1] - edges[i];
            const double p = c.n_size * cdf.prob(edges[i], edges[i + 1]);
            // counts per sample in a bin are at most N; binomial-type error of the bin mean
            const double se = std::sqrt(std::max(p * (1.0 - p / c.n_size), 0.0) / n) / w;
            t.rows.push_back({edges[i], edges[i + 1], emp[i], p / w, se});
        }
        write_csv_file(c.out, t);
    }
    print_report(c, rep);
    return rep.passed() ? kExitPass : kExitCheckFailure;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Config& c) {
    validate_common(c);
    require(is_suite(c.suite), "--suite must be one of identities, limits, representations, all");
    SuiteOptions opt;
    opt.trunc = c.trunc();
    opt.mb.step = c.mb_step;
    opt.mb.cutoff = c.mb_cutoff;
    opt.seed = c.seed;
    const VerificationReport rep = run_suite(c.suite, opt);
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        require(static_cast<bool>(f), "cannot open " + c.out);
        f << rep.to_json().dump(2) << "\n";
    }
    print_report(c, rep);
    return rep.passed() ? kExitPass : kExitCheckFailure;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const Config& c) {
    validate_common(c);
    const auto grid = parse_grid(c.grid, c.log_grid);
    std::string param;
    std::function<double(double)> f;
    const Truncation tr = c.trunc();
    if (c.diagnostic == "small-g-diagonal") {
        param = "g";
        require(c.x > 0, "--x must be positive");
        f = [&, tr](double g) { return std::fabs(interp_density({c.nu, g, tr}, c.x) - bessel_density(c.nu, c.x)); };
    } else if (c.diagnostic == "large-g-transition") {
        param = "g";
        require(c.x > 0 && c.y > 0, "--x and --y must be positive");
        const double target = meijer_kernel(c.nu, 0.0, c.x, c.y);
        f = [&, tr, target](double g) {
            const double v = g * interp_kernel({c.nu, g, tr}, 2 * std::sqrt(g * c.x), 2 * std::sqrt(g * c.y));
            return std::fabs(v / target - 1.0);
        };
    } else if (c.diagnostic == "kappa1-error") {
        param = "n_size";
        require(c.g > 0, "--g must be positive");
        f = [&, tr](double nd) {
            const int n = static_cast<int>(std::lround(nd));
            if (n < 1) throw ConfigError("kappa1-error needs N >= 1 on the grid");
            const CoupledParams p{n, c.nu, c.g / n};
            const InterpParams ip{c.nu, c.g, tr};
            double sup = 0;
            for (double x : {0.5, 1.0, 1.5, 2.0})
                for (double y : {0.5, 1.0, 1.5, 2.0}) {
                    const double a = x * x / (4.0 * n * n), b = y * y / (4.0 * n * n);
                    const double k = (x == y ? kernel_diag(p, a) : kernel(p, a, b)) / (double(n) * n);
                    sup = std::max(sup, std::fabs(k - (x == y ? interp_density(ip, x) : interp_kernel(ip, x, y))));
                }
            return sup;
        };
    } else if (c.diagnostic == "rho-mb") {
        param = "theta";
        require(c.x > 0 && c.alpha > -1, "--x must be positive and --alpha above -1");
        f = [&](double th) { return rho_micro_mb(c.alpha, th, c.x); };
    } else {
        throw ConfigError("--diagnostic must be one of small-g-diagonal, large-g-transition, kappa1-error, rho-mb");
    }
    if (param == "g" || param == "theta")
        for (double v : grid) require(v > 0, "--grid values must be positive for " + param);
    std::vector<double> vals(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { vals[i] = f(grid[i]); });
    CsvTable t = make_table(c, {param, "value", "trend"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double trend = i == 0 ? 0.0 : (vals[i] > vals[i - 1]) - (vals[i] < vals[i - 1]);
        t.rows.push_back({param == "n_size" ? std::round(grid[i]) : grid[i], vals[i], trend});
    }
    emit(c, t);
    return kExitPass;
}

void add_parameter_options(CLI::App* app, Config& c) {
    app->add_option("--type", c.type, "kernel or density id");
    app->add_option("--nu", c.nu, "nu = M - N (integer)");
    app->add_option("--nu2", c.nu2, "second index of the independent-product kernel");
    app->add_option("--mu", c.mu, "coupling mu in (0, 1)");
    app->add_option("--g", c.g, "coupling scale g > 0");
    app->add_option("--n-size", c.n_size, "matrix size N");
    app->add_option("--alpha", c.alpha, "Muttalib-Borodin alpha > -1");
    app->add_option("--theta", c.theta, "Muttalib-Borodin theta > 0");
    app->add_option("--grid", c.grid, "lo:hi:count");
    app->add_flag("--log-grid", c.log_grid, "geometric grid spacing");
    app->add_option("--seed", c.seed, "random seed");
    app->add_option("--out", c.out, "output path (CSV, or JSON for verify)");
    app->add_option("--eps", c.eps, "series truncation tolerance");
    app->add_option("--kmax", c.kmax, "series term cap");
    app->add_option("--mb-step", c.mb_step, "Mellin-Barnes trapezoid step");
    app->add_option("--mb-cutoff", c.mb_cutoff, "Mellin-Barnes |Im s| cutoff");
    app->add_flag("--json", c.json, "print the report as JSON");
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"hard-edge kernels: exact finite-N and limiting kernels, Monte Carlo checks and verification suites"};
    app.require_subcommand(1);

    auto* kernel_cmd = app.add_subcommand("kernel", "tabulate a kernel over a grid");
    add_parameter_options(kernel_cmd, c);
    kernel_cmd->add_flag("--diag", c.diag, "diagonal K(x, x) only");

    auto* density_cmd = app.add_subcommand("density", "tabulate one-point or unfolded densities");
    add_parameter_options(density_cmd, c);
    density_cmd->add_option("--figure", c.figure, "1: interpolating vs Bessel curves, 2: Muttalib-Borodin curves");

    auto* mc_cmd = app.add_subcommand("mc-compare", "sample an ensemble and compare with the exact one-point function");
    add_parameter_options(mc_cmd, c);
    mc_cmd->add_option("--samples", c.samples, "number of matrices");
    mc_cmd->add_option("--bins", c.bins, "equiprobable bins");
    mc_cmd->add_option("--ensemble", c.ensemble, "coupled or independent");
    mc_cmd->add_option("--batch-out", c.batch_out, "persist the batch as CSV plus JSON sidecar");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_parameter_options(verify_cmd, c);
    verify_cmd->add_option("--suite", c.suite, "identities, limits, representations or all");

    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate a diagnostic over a 1-D parameter grid");
    add_parameter_options(sweep_cmd, c);
    sweep_cmd->add_option("--diagnostic", c.diagnostic, "small-g-diagonal, large-g-transition, kappa1-error, rho-mb");
    sweep_cmd->add_option("--x", c.x, "first kernel argument");
    sweep_cmd->add_option("--y", c.y, "second kernel argument");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (*kernel_cmd) return c.command = "kernel", cmd_kernel(c);
        if (*density_cmd) return c.command = "density", cmd_density(c);
        if (*mc_cmd) return c.command = "mc-compare", cmd_mc_compare(c);
        if (*verify_cmd) return c.command = "verify", cmd_verify(c);
        if (*sweep_cmd) return c.command = "sweep", cmd_sweep(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitConfigError;
}
