#pragma once
// Monte Carlo sampling of the coupled and independent product ensembles and
// the statistics used to compare samples with exact one-point functions.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hek {

using ComplexMatrix = Eigen::MatrixXcd;

constexpr int kMaxEnsembleN = 64;
constexpr long kMaxSamples = 1000000;

/// Generator identifier recorded in batch metadata.
inline const char* generator_id() { return "mt19937_64/seed_seq(seed_lo,seed_hi,index)/box-muller"; }

struct SampleBatch {
    int n_size = 0;
    int m_size = 0;
    double mu = 1.0;  // 1 for the independent product
    std::uint64_t seed = 0;
    std::string ensemble;  // "coupled" or "independent"
    std::vector<std::vector<double>> samples;  // ascending squared singular values
};

/// Squared singular values of X1 X2 with X1 = (A - i sqrt(mu) B)/sqrt2,
/// X2 = (A^dagger - i sqrt(mu) B^dagger)/sqrt2 and A, B N x M with E|a|^2 = 1.
SampleBatch sample_coupled(int n, int m, double mu, std::uint64_t seed, long n_samples);
/// Squared singular values of X1 X2 with independent Gaussian X1 (N x M), X2 (M x N).
SampleBatch sample_independent(int n, int m, std::uint64_t seed, long n_samples);

/// Ascending eigenvalues of a Hermitian matrix. Throws if H deviates from its
/// adjoint by more than tol relative; tiny negatives (above -1e-10 ||H||) are clamped to 0
/// when clamp_psd is set.
std::vector<double> hermitian_eigs(const ComplexMatrix& h, bool clamp_psd = true, double tol = 1e-12);

struct Histogram {
    std::vector<double> edges;
    std::vector<double> counts;
    double total_weight = 0.0;  // number of samples
    /// counts / (total_weight * width): integrates to N over the covered range
    std::vector<double> density() const;
};

/// All values of a batch in one ascending list (the one-point marginal).
std::vector<double> pooled_values(const SampleBatch& batch);

Histogram empirical_density(const SampleBatch& batch, const std::vector<double>& edges);

/// sup |F_emp - cdf| over the pooled values; cdf is the normalised one-point CDF.
double ks_distance(const SampleBatch& batch, const std::function<double(double)>& cdf);
double ks_distance(const std::vector<double>& sorted_values, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov distance between ascending lists.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);
/// Asymptotic Kolmogorov tail probability P(sqrt(n_eff) D > d sqrt(n_eff)).
double ks_pvalue(double d, double n_eff);
/// One-sample critical distance at level alpha for n independent values.
double ks_critical(double alpha, double n);

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of observed counts against expected probabilities (sum 1)
/// for n_total draws; dof = bins - 1.
ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob, double n_total);

/// Tabulated CDF of a nonnegative density on (0, inf), normalised to 1.
class TabulatedCdf {
public:
    /// density(y) must integrate to `mass` over (0, inf); tabulated in t = sqrt(y).
    TabulatedCdf(const std::function<double(double)>& density, double mass, double scale = 1.0);
    double operator()(double y) const;
    double quantile(double p) const;
    /// exact probability of (a, b] from the density
    double prob(double a, double b) const;
    /// largest tabulated y; the CDF is 1 beyond it to within 1e-13
    double upper() const { return grid_.back() * grid_.back(); }

private:
    double integrand(double t) const;  // 2t density(t^2) / total

    std::function<double(double)> density_;
    double total_ = 1.0;
    std::vector<double> grid_, cum_, slope_;  // nodes in t, CDF, dCDF/dt
};

/// Equiprobable chi-square comparison of the pooled values with a tabulated CDF.
ChiSquare chi_square_equiprobable(const SampleBatch& batch, const TabulatedCdf& cdf, int bins);

/// Batch persistence: CSV with a '#' JSON metadata line, one row per sample, plus a JSON sidecar at path + ".json".
void save_batch(const SampleBatch& batch, const std::string& path);
SampleBatch load_batch(const std::string& path);

}  // namespace hek
