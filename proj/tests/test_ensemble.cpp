#include "hek/ensemble.hpp"
#include "hek/finite_kernel.hpp"
#include "hek/meijer.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace hek;

TEST_CASE("sampling is deterministic in the seed") {
    const SampleBatch a = sample_coupled(3, 4, 0.6, 7, 50);
    const SampleBatch b = sample_coupled(3, 4, 0.6, 7, 50);
    const SampleBatch c = sample_coupled(3, 4, 0.6, 8, 50);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    for (const auto& s : a.samples) {
        REQUIRE(s.size() == 3);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(s.front() >= 0.0);
    }
}

TEST_CASE("prefix stability: sample i does not depend on the batch size") {
    const SampleBatch a = sample_independent(2, 3, 11, 10);
    const SampleBatch b = sample_independent(2, 3, 11, 40);
    for (int i = 0; i < 10; ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("hermitian eigenvalues") {
    ComplexMatrix h(2, 2);
    h << 2.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 2.0;
    const auto ev = hermitian_eigs(h);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
    ComplexMatrix bad(2, 2);
    bad << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS(hermitian_eigs(bad));
}

TEST_CASE("chi-square and KS primitives") {
    const ChiSquare exact = chi_square({25, 25, 50}, {0.25, 0.25, 0.5}, 100);
    CHECK(exact.statistic == doctest::Approx(0.0));
    CHECK(exact.dof == 2);
    CHECK(exact.p_value == doctest::Approx(1.0));
    CHECK(ks_pvalue(0.0, 1000) == doctest::Approx(1.0));
    const double crit = ks_critical(0.05, 1e6);
    CHECK(crit * std::sqrt(1e6) == doctest::Approx(1.3581).epsilon(2e-3));
    CHECK(ks_pvalue(crit, 1e6) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("tabulated CDF of an exponential density") {
    const TabulatedCdf cdf([](double y) { return 2.0 * std::exp(-y); }, 2.0, 1.0);
    CHECK(cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
    CHECK(cdf.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    CHECK(cdf.prob(1.0, 2.0) == doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-12));
    // a density that does not carry the stated mass is rejected
    CHECK_THROWS(TabulatedCdf([](double y) { return std::exp(-y); }, 2.0, 1.0));
}

TEST_CASE("N = 1 coupled marginal matches the exact one-point function") {
    const CoupledParams p{1, 1, 0.5};
    const SampleBatch b = sample_coupled(1, 2, 0.5, 123, 20000);
    const TabulatedCdf cdf([p](double y) { return kernel_diag(p, y); }, 1.0, 1.0);
    const double d = ks_distance(b, [&](double y) { return cdf(y); });
    CHECK(ks_pvalue(d, 20000) > 1e-3);
}

TEST_CASE("independent-product marginal matches the finite kernel") {
    const SampleBatch b = sample_independent(2, 3, 99, 10000);
    const TabulatedCdf cdf([](double y) { return finite_independent_kernel(2, 1, y, y); }, 2.0, 1.0);
    CHECK(chi_square_equiprobable(b, cdf, 20).p_value > 1e-3);
}

TEST_CASE("batch persistence round trip") {
    const SampleBatch a = sample_coupled(2, 3, 0.4, 5, 20);
    const auto path = (std::filesystem::temp_directory_path() / "hek_batch_test.csv").string();
    save_batch(a, path);
    CHECK(std::filesystem::exists(path + ".json"));
    const SampleBatch b = load_batch(path);
    CHECK(b.samples == a.samples);
    CHECK(b.seed == a.seed);
    CHECK(b.mu == a.mu);
    CHECK(b.ensemble == a.ensemble);
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("size and parameter limits") {
    CHECK_THROWS_AS(sample_coupled(65, 65, 0.5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_coupled(2, 1, 0.5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_coupled(2, 2, 1.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_coupled(2, 2, 0.5, 1, 0), std::invalid_argument);
}
