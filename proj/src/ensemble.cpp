#include "hek/ensemble.hpp"

#include "hek/numeric.hpp"
#include "hek/parallel.hpp"
#include "hek/quadrature.hpp"
#include "hek/report.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#ifndef HEK_GIT_DESCRIBE
#define HEK_GIT_DESCRIBE "unknown"
#endif

namespace hek {

namespace {

void check_sizes(int n, int m, long n_samples) {
    if (n < 1 || n > kMaxEnsembleN) throw std::invalid_argument("ensemble size N must lie in [1, 64]");
    if (m < n) throw std::invalid_argument("ensemble needs M >= N");
    if (m > n + 4 * kMaxEnsembleN) throw std::invalid_argument("M - N is too large for the sampler");
    if (n_samples < 1 || n_samples > kMaxSamples) throw std::invalid_argument("n_samples must lie in [1, 1e6]");
}

// One stream per sample: the batch is independent of the worker count.
std::mt19937_64 sample_stream(std::uint64_t seed, long index) {
    const auto i = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    return std::mt19937_64(seq);
}

// Complex normal with E|z|^2 = 1; Box-Muller keeps the stream layout fixed.
std::complex<double> complex_normal(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;
    const double r = std::sqrt(-std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

ComplexMatrix gaussian(std::mt19937_64& rng, int rows, int cols) {
    ComplexMatrix a(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = complex_normal(rng);
    return a;
}

std::vector<double> squared_singular_values(const ComplexMatrix& y) {
    return hermitian_eigs(y.adjoint() * y);
}

}  // namespace

SampleBatch sample_coupled(int n, int m, double mu, std::uint64_t seed, long n_samples) {
    check_sizes(n, m, n_samples);
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("coupling mu must lie strictly inside (0, 1)");
    SampleBatch batch{n, m, mu, seed, "coupled", std::vector<std::vector<double>>(n_samples)};
    const std::complex<double> coef(0.0, -std::sqrt(mu));
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t s) {
        auto rng = sample_stream(seed, static_cast<long>(s));
        const ComplexMatrix a = gaussian(rng, n, m);
        const ComplexMatrix b = gaussian(rng, n, m);
        const ComplexMatrix x1 = (a + coef * b) / std::numbers::sqrt2;
        const ComplexMatrix x2 = (a.adjoint() + coef * b.adjoint()) / std::numbers::sqrt2;
        batch.samples[s] = squared_singular_values(x1 * x2);
    });
    return batch;
}

SampleBatch sample_independent(int n, int m, std::uint64_t seed, long n_samples) {
    check_sizes(n, m, n_samples);
    SampleBatch batch{n, m, 1.0, seed, "independent", std::vector<std::vector<double>>(n_samples)};
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t s) {
        auto rng = sample_stream(seed, static_cast<long>(s));
        const ComplexMatrix x1 = gaussian(rng, n, m);
        const ComplexMatrix x2 = gaussian(rng, m, n);
        batch.samples[s] = squared_singular_values(x1 * x2);
    });
    return batch;
}

std::vector<double> hermitian_eigs(const ComplexMatrix& h, bool clamp_psd, double tol) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigs needs a square matrix");
    const double scale = std::max(h.norm(), 1e-300);
    if ((h - h.adjoint()).norm() > tol * scale) throw std::invalid_argument("matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
    if (clamp_psd) {
        for (double& v : ev) {
            if (v < -1e-10 * scale) throw std::runtime_error("Gram matrix has a clearly negative eigenvalue");
            v = std::max(v, 0.0);
        }
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> Histogram::density() const {
    std::vector<double> d(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) d[i] = counts[i] / (total_weight * (edges[i + 1] - edges[i]));
    return d;
}

std::vector<double> pooled_values(const SampleBatch& batch) {
    std::vector<double> all;
    all.reserve(batch.samples.size() * static_cast<std::size_t>(batch.n_size));
    for (const auto& s : batch.samples) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    return all;
}

Histogram empirical_density(const SampleBatch& batch, const std::vector<double>& edges) {
    if (batch.samples.empty()) throw std::invalid_argument("empty batch");
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()))
        throw std::invalid_argument("histogram edges must be ascending with at least two entries");
    Histogram h{edges, std::vector<double>(edges.size() - 1, 0.0), static_cast<double>(batch.samples.size())};
    for (const auto& s : batch.samples) {
        for (double v : s) {
            if (v < edges.front() || v >= edges.back()) continue;
            const auto it = std::upper_bound(edges.begin(), edges.end(), v);
            h.counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
        }
    }
    return h;
}

double ks_distance(const std::vector<double>& sorted_values, const std::function<double(double)>& cdf) {
    if (sorted_values.empty()) throw std::invalid_argument("empty sample");
    const double n = static_cast<double>(sorted_values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const double f = cdf(sorted_values[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_distance(const SampleBatch& batch, const std::function<double(double)>& cdf) {
    if (batch.samples.empty()) throw std::invalid_argument("empty batch");
    return ks_distance(pooled_values(batch), cdf);
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

namespace {

// Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? term : -term);
        if (term < 1e-17 * std::abs(sum)) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Stephens' finite-n correction of the scaling.
double ks_lambda(double d, double n) {
    const double rn = std::sqrt(n);
    return d * (rn + 0.12 + 0.11 / rn);
}

}  // namespace

double ks_pvalue(double d, double n_eff) {
    if (n_eff <= 0) throw std::invalid_argument("n_eff must be positive");
    return kolmogorov_q(ks_lambda(d, n_eff));
}

double ks_critical(double alpha, double n) {
    if (!(alpha > 0.0 && alpha < 1.0) || n <= 0) throw std::invalid_argument("ks_critical: bad arguments");
    double lo = 0.2, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_q(mid) > alpha ? lo : hi) = mid;
    }
    const double rn = std::sqrt(n);
    return 0.5 * (lo + hi) / (rn + 0.12 + 0.11 / rn);
}

ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob, double n_total) {
    if (observed.size() != expected_prob.size() || observed.size() < 2)
        throw std::invalid_argument("chi_square: need matching observed / expected of size >= 2");
    ChiSquare c;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected_prob[i] * n_total;
        if (!(e > 0.0)) throw std::invalid_argument("chi_square: nonpositive expected count");
        c.statistic += (observed[i] - e) * (observed[i] - e) / e;
    }
    c.dof = static_cast<int>(observed.size()) - 1;
    c.p_value = boost::math::gamma_q(0.5 * c.dof, 0.5 * c.statistic);
    return c;
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& density, double mass, double scale)
    : density_(density) {
    if (!(mass > 0.0) || !(scale > 0.0)) throw std::invalid_argument("TabulatedCdf: mass and scale must be positive");
    // Find a cut-off in t where the tail is negligible.
    const double s = std::sqrt(scale);
    double t_max = 4.0 * s;
    auto raw = [&](double t) { return t > 0.0 ? 2.0 * t * density_(t * t) : 0.0; };
    while (t_max < 1e4 * s && raw(t_max) * t_max > 1e-15 * mass) t_max *= 1.25;

    const int nodes = 1200;
    grid_.resize(nodes + 1);
    cum_.assign(nodes + 1, 0.0);
    slope_.resize(nodes + 1);
    for (int k = 0; k <= nodes; ++k) grid_[k] = t_max * k / nodes;
    std::vector<double> piece(nodes);
    parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t k) {
        piece[k] = integrate(raw, grid_[k], grid_[k + 1], 1e-11).value;
    });
    for (int k = 0; k < nodes; ++k) cum_[k + 1] = cum_[k] + piece[k];
    total_ = cum_.back();
    if (std::abs(total_ - mass) > 1e-6 * mass)
        throw std::runtime_error("TabulatedCdf: density integrates to " + format_double(total_) + " instead of " +
                                 format_double(mass));
    for (int k = 0; k <= nodes; ++k) {
        cum_[k] /= total_;
        slope_[k] = raw(grid_[k]) / total_;
    }
}

double TabulatedCdf::integrand(double t) const { return t > 0.0 ? 2.0 * t * density_(t * t) / total_ : 0.0; }

double TabulatedCdf::operator()(double y) const {
    if (y <= 0.0) return 0.0;
    const double t = std::sqrt(y);
    if (t >= grid_.back()) return 1.0;
    const auto k = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), t) - grid_.begin()) - 1;
    // cubic Hermite on the node values and derivatives
    const double h = grid_[k + 1] - grid_[k];
    const double u = (t - grid_[k]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return std::clamp(h00 * cum_[k] + h10 * h * slope_[k] + h01 * cum_[k + 1] + h11 * h * slope_[k + 1], 0.0, 1.0);
}

double TabulatedCdf::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0, 1]");
    double lo = 0.0, hi = upper();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double TabulatedCdf::prob(double a, double b) const {
    const double ta = std::sqrt(std::max(a, 0.0));
    const double tb = std::isinf(b) ? grid_.back() : std::sqrt(std::max(b, 0.0));
    if (tb <= ta) return 0.0;
    // integrate piecewise on the tabulation nodes so each panel stays smooth
    std::vector<double> pts{ta};
    for (double g : grid_)
        if (g > ta && g < tb) pts.push_back(g);
    pts.push_back(tb);
    if (pts.size() > 64) {
        // long ranges: use the tabulated interior and integrate only the ends
        const auto first = std::upper_bound(grid_.begin(), grid_.end(), ta);
        const auto last = std::lower_bound(grid_.begin(), grid_.end(), tb) - 1;
        const double head = integrate([this](double t) { return integrand(t); }, ta, *first, 1e-11).value;
        const double tail = integrate([this](double t) { return integrand(t); }, *last, tb, 1e-11).value;
        return head + (cum_[last - grid_.begin()] - cum_[first - grid_.begin()]) + tail;
    }
    return integrate_pieces([this](double t) { return integrand(t); }, pts, 1e-11).value;
}

ChiSquare chi_square_equiprobable(const SampleBatch& batch, const TabulatedCdf& cdf, int bins) {
    if (bins < 2) throw std::invalid_argument("need at least two bins");
    if (batch.samples.empty()) throw std::invalid_argument("empty batch");
    std::vector<double> edges{0.0};
    for (int i = 1; i < bins; ++i) edges.push_back(cdf.quantile(static_cast<double>(i) / bins));
    edges.push_back(INFINITY);
    std::vector<double> expected(bins), observed(bins, 0.0);
    double inner = 0.0;
    for (int i = 0; i + 1 < bins; ++i) {
        expected[i] = cdf.prob(edges[i], edges[i + 1]);
        inner += expected[i];
    }
    expected[bins - 1] = 1.0 - inner;
    const auto values = pooled_values(batch);
    for (double v : values) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        observed[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
    }
    return chi_square(observed, expected, static_cast<double>(values.size()));
}

namespace {

nlohmann::json batch_meta(const SampleBatch& b) {
    return {{"seed", b.seed},
            {"ensemble", b.ensemble},
            {"params", {{"n_size", b.n_size}, {"m_size", b.m_size}, {"nu", b.m_size - b.n_size}, {"mu", b.mu}}},
            {"n_samples", b.samples.size()},
            {"generator", generator_id()},
            {"git_describe", HEK_GIT_DESCRIBE}};
}

}  // namespace

void save_batch(const SampleBatch& batch, const std::string& path) {
    CsvTable t;
    t.meta = batch_meta(batch);
    for (int i = 1; i <= batch.n_size; ++i) t.columns.push_back("y" + std::to_string(i));
    t.rows = batch.samples;
    write_csv_file(path, t);
    std::ofstream side(path + ".json");
    if (!side) throw std::runtime_error("cannot write sidecar " + path + ".json");
    side << t.meta.dump(2) << '\n';
}

SampleBatch load_batch(const std::string& path) {
    const CsvTable t = read_csv_file(path);
    SampleBatch b;
    try {
        b.seed = t.meta.at("seed").get<std::uint64_t>();
        b.ensemble = t.meta.at("ensemble").get<std::string>();
        b.n_size = t.meta.at("params").at("n_size").get<int>();
        b.m_size = t.meta.at("params").at("m_size").get<int>();
        b.mu = t.meta.at("params").at("mu").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("batch metadata incomplete in " + path + ": " + e.what());
    }
    if (static_cast<int>(t.columns.size()) != b.n_size) throw std::runtime_error("batch width does not match n_size");
    b.samples = t.rows;
    return b;
}

}  // namespace hek
