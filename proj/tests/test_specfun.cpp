// Reference values frozen from tests/oracles/specfun.py (mpmath, 40 digits).
#include "hek/numeric.hpp"
#include "hek/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace hek;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("bessel functions against mpmath") {
    CHECK(rel(bessel_j(2.5, 3.7), 0.45685188411295336523) < 1e-13);
    CHECK(rel(bessel_j_any(-3, 2.1), -0.14527667405420636658) < 1e-13);
    CHECK(rel(bessel_i_scaled(3, 5.0), 0.069610742279333228684) < 1e-13);
    CHECK(rel(bessel_k_scaled(2, 0.7), 7.3730131215222052235) < 1e-13);
    CHECK(rel(bessel_k_scaled(5, 40.0), 0.26889975951803250103) < 1e-13);
}

TEST_CASE("log gamma") {
    CHECK(rel(ln_gamma(7.3), 7.1478925230222490328) < 1e-14);
    CHECK(rel(ln_gamma(0.01), 4.5994798780420217225) < 1e-14);
}

TEST_CASE("wright function series") {
    CHECK(rel(wright_bessel(0.5, 1.5, 2.0), -0.88730018416038959491) < 1e-12);
    CHECK(rel(wright_bessel(2.0, 0.8, 10.0), -0.0065074088306045872729) < 1e-10);

    const SeriesResult r = wright_bessel_series(1.0, 1.0, 4.0, 1e-15);
    CHECK(r.converged);
    CHECK(r.tail_bound <= 1e-14 * std::fabs(r.value) + 1e-300);
}

TEST_CASE("wright function reduces to bessel J") {
    for (double a : {0.0, 0.5, 1.0, 2.0})
        for (double z : {0.3, 2.0, 7.5, 19.0}) {
            const double lhs = wright_bessel(a + 1.0, 1.0, z * z / 4.0) * std::pow(z / 2.0, a);
            const double rhs = bessel_j(a, z);
            // measured against the local amplitude, since J has zeros on this range
            CHECK(std::fabs(lhs - rhs) < 1e-10 * std::max(std::fabs(rhs), std::sqrt(2.0 / (kPi * z))));
        }
}

TEST_CASE("wright terms at gamma poles vanish") {
    // a = 0, b = 1: the j = 0 term carries 1/Gamma(0) = 0, leaving J_{0,1}(1) = -J_1(2)
    const double v = wright_bessel(0.0, 1.0, 1.0);
    CHECK(std::isfinite(v));
    CHECK(rel(v, -bessel_j(1.0, 2.0)) < 1e-12);
}

TEST_CASE("laguerre and kummer") {
    CHECK(rel(laguerre(5, 1.5, 2.3), -0.51548066666666666667) < 1e-13);
    CHECK(rel(kummer_m(0.7, 2.1, 3.3), 4.620971820903075159) < 1e-13);
    CHECK(rel(kummer_m(-2.5, 1.5, 4.0), 0.59037665471789105005) < 1e-12);
    CHECK_THROWS_AS(kummer_m(0.5, -2.0, 1.0), DomainError);
}

TEST_CASE("bessel recurrence") {
    for (double z : {0.5, 3.0, 12.0})
        for (int n = 1; n < 6; ++n) {
            const double a = bessel_j_any(n - 1, z), b = bessel_j_any(n + 1, z), c = 2.0 * n / z * bessel_j_any(n, z);
            CHECK(std::fabs(a + b - c) < 1e-12 * (std::fabs(a) + std::fabs(b) + std::fabs(c)));
        }
}
