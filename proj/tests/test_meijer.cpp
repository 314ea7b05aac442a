// Reference values frozen from tests/oracles/meijer.py (mpmath, 30 digits).
#include "hek/hard_edge.hpp"
#include "hek/meijer.hpp"
#include "hek/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace hek;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("independent-product kernel against mpmath") {
    CHECK(rel(meijer_kernel(0, 0, 0.5, 1.2), 0.22271017287190236094) < 1e-9);
    CHECK(rel(meijer_kernel(1, 0.5, 2.0, 0.7), 0.26809768540820310397) < 1e-9);
    CHECK(rel(meijer_g_203(1, 0, 0, 1.5), 0.010024725397031806409) < 1e-9);
}

TEST_CASE("line quadrature equals the u-integral form") {
    CHECK(rel(meijer_kernel(0, 0, 0.5, 1.2), meijer_kernel_u_integral(0, 0, 0.5, 1.2)) < 1e-7);
    const MeijerEval e = meijer_kernel_eval(1, 0, 0.9, 2.0, {});
    CHECK(e.imag_residual < 1e-12);
}

TEST_CASE("borodin kernel against mpmath") {
    CHECK(rel(borodin_kernel(0, 1.5, 1.2, 0.8), 0.36427269633707908869) < 1e-9);
    CHECK(rel(borodin_kernel(0.5, 0.7, 0.9, 1.6), 0.17897157245714140841) < 1e-9);
    CHECK(rel(rho_micro_mb(0, 1.2, 1.5), 0.27562158254057664613) < 1e-9);
}

TEST_CASE("theta = 1 maps onto the bessel kernel") {
    for (int nu : {0, 1, 2}) {
        const double x = 0.8, y = 1.7;
        const double mapped = 2.0 * std::pow(y / x, nu) / std::sqrt(x * y) * borodin_kernel(nu, 1.0, x, y);
        CHECK(rel(mapped, bessel_kernel(nu, x, y)) < 1e-8);
    }
}

TEST_CASE("theta = 1/2 matches the independent-product kernel") {
    CHECK(rel(4.0 * borodin_kernel(0.0, 0.5, 2.0, 4.8), meijer_kernel(0.0, 0.5, 0.5, 1.2)) < 1e-6);
}

TEST_CASE("finite independent kernel integrates to N") {
    for (int n : {1, 3}) {
        const double tr = integrate_half_line([&](double y) { return finite_independent_kernel(n, 1, y, y); }, 1e-10, 1.0).value;
        CHECK(std::fabs(tr - n) < 1e-7);
    }
    CHECK(rel(finite_independent_kernel(2, 1, 0.8, 1.7), finite_independent_kernel_line(2, 1, 0.8, 1.7)) < 1e-7);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(borodin_kernel(-1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(borodin_kernel(0.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(meijer_kernel(0, 0, -1.0, 1.0), DomainError);
}
