// Reference values frozen from tests/oracles/finite_kernel.py (mpmath, 40 digits).
#include "hek/finite_kernel.hpp"
#include "hek/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace hek;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("biorthogonal functions against mpmath") {
    CHECK(rel(p_n({4, 1, 0.5}, 2, 1.0).value(), -10.735183465971222784) < 1e-12);
    CHECK(rel(q_n({4, 0, 0.5}, 3, 2.0).value(), 6.8603812631493348048e-6) < 1e-12);
}

TEST_CASE("kernel sum form against mpmath") {
    CHECK(rel(kernel({6, 2, 0.4}, 1.3, 0.7), 0.89136860526541380632) < 1e-12);
    CHECK(rel(kernel({1, 0, 0.5}, 1.0, 1.0), 0.1759300044539375194) < 1e-12);
    CHECK(rel(kernel_diag({1, 0, 0.5}, 1.0), 0.1759300044539375194) < 1e-12);
    // small mu: heavy cancellation handled by the adaptive precision
    CHECK(rel(kernel({30, 1, 0.05}, 0.01, 0.02), 11.686037197895148571) < 1e-10);
}

TEST_CASE("christoffel-darboux form equals the sum form") {
    const CoupledParams p{5, 1, 0.3};
    for (double x : {0.2, 1.1, 3.0})
        for (double y : {0.4, 2.2})
            CHECK(rel(kernel_cd(p, x, y), kernel(p, x, y)) < 1e-10);
}

TEST_CASE("A_N polynomial") {
    CHECK(rel(a_n_poly(0.3, 0.7, {2, 1, 0.5}), -0.24065217391304347826) < 1e-14);
    CHECK_THROWS_AS(a_n_poly(3.0, 0.7, {2, 1, 0.5}), DomainError);
}

TEST_CASE("one-point function integrates to N") {
    for (int n : {1, 3}) {
        const CoupledParams p{n, 1, 0.6};
        const double tr = integrate_half_line([&](double y) { return kernel_diag(p, y); }, 1e-11, 1.0).value;
        CHECK(std::fabs(tr - n) < 1e-8);
    }
}

TEST_CASE("gauge factor multiplies the kernel") {
    const CoupledParams p{3, 0, 0.5};
    const double g = 0.37;
    CHECK(rel(kernel(p, 0.8, 1.9, g), std::exp(g) * kernel(p, 0.8, 1.9)) < 1e-13);
}

TEST_CASE("determinant of the kernel is N! times the joint density") {
    const CoupledParams p{2, 1, 0.4};
    const std::vector<double> ys{0.6, 1.7};
    const double d = kernel(p, ys[0], ys[0]) * kernel(p, ys[1], ys[1]) - kernel(p, ys[0], ys[1]) * kernel(p, ys[1], ys[0]);
    CHECK(rel(d / 2.0, joint_density(p, ys)) < 1e-10);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(kernel({0, 0, 0.5}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(kernel({2, -1, 0.5}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(kernel({2, 0, 1.0}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(kernel({2, 0, 0.5}, -1.0, 1.0), DomainError);
}
