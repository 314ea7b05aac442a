// Reference values frozen from tests/oracles/hard_edge.py (mpmath, 60 digits).
// The oracle evaluates the printed residue sums; the library normalises the
// interpolating kernel as the finite-N limit, which is twice the printed form.
#include "hek/hard_edge.hpp"
#include "hek/meijer.hpp"

#include <doctest.h>

#include <cmath>

using namespace hek;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("bessel kernel against mpmath") {
    CHECK(rel(bessel_kernel(1, 1.3, 0.6), 0.35429336393998472805) < 1e-13);
    CHECK(rel(bessel_density(0, 1.0), 0.76547716973334426879) < 1e-13);
    CHECK(rel(bessel_density(2, 7.5), 0.027185768035870075596) < 1e-12);
    CHECK(rel(bessel_kernel_alt(1, 1.3, 0.6), bessel_kernel(1, 1.3, 0.6)) < 1e-12);
}

TEST_CASE("interpolating kernel against the double residue sum") {
    CHECK(rel(interp_kernel({0, 1.0, {}}, 1.0, 2.0), 2 * 0.12328866971638150891) < 1e-10);
    CHECK(rel(interp_kernel({1, 0.5, {}}, 0.7, 1.9), 2 * 0.10263805979872811516) < 1e-10);
    CHECK(rel(interp_kernel({2, 2.0, {}}, 3.0, 1.5), 2 * 0.075584329089184176878) < 1e-10);
}

TEST_CASE("interpolating density against the diagonal residue sum") {
    CHECK(rel(interp_density({0, 1.0, {}}, 1.0), 2 * 0.44691207323123583114) < 1e-10);
    CHECK(rel(interp_density({1, 0.5, {}}, 2.0), 2 * 0.12904533824659973633) < 1e-10);
    CHECK(rel(interp_density({2, 2.0, {}}, 0.8), 2 * 0.089610028418519509615) < 1e-10);
}

TEST_CASE("integrable form equals the literal double sum") {
    const InterpParams p{0, 1.0, {}};
    CHECK(rel(interp_kernel(p, 1.0, 2.0), interp_kernel_double_sum(p, 1.0, 2.0).value) < 1e-8);
}

TEST_CASE("diagonal continuity of the interpolating kernel") {
    const InterpParams p{1, 0.7, {}};
    const double d = interp_density(p, 1.5);
    CHECK(rel(interp_kernel(p, 1.5, 1.5 * (1 + 1e-5)), d) < 1e-4);
}

TEST_CASE("residue moments match bessel closed forms") {
    for (int nu : {0, 1, 3})
        for (auto w : {MomentWeight::one, MomentWeight::t, MomentWeight::t_tnu, MomentWeight::t_tnu_tnu1,
                       MomentWeight::t2, MomentWeight::t2_tnu, MomentWeight::t2_tnu_tnu1})
            for (double xi : {0.5, 4.0}) {
                const double a = residue_j_moment(nu, w, xi), b = residue_j_closed(nu, w, xi);
                CHECK(std::fabs(a - b) <= 1e-10 * std::max(1.0, std::fabs(b)));
            }
}

TEST_CASE("integral identities vanish; the printed third one does not") {
    for (int which : {1, 2, 3})
        for (int nu : {0, 1, 2})
            for (double x : {0.5, 1.0, 3.0}) CHECK(identity_residual(which, nu, x).relative() < 1e-8);
    CHECK(identity_residual(3, 1, 0.5, true).relative() > 1e-2);
}

TEST_CASE("the two forms of the cubic polynomial agree") {
    for (double s : {0.0, 1.0, 2.5})
        for (double t : {0.0, 3.0, 4.5})
            for (int nu : {0, 2}) CHECK(std::fabs(cal_p(s, t, nu) - cal_p_expanded(s, t, nu)) < 1e-12 * (1 + std::fabs(cal_p(s, t, nu))));
}

TEST_CASE("small and large g limits") {
    // g -> 0: the Bessel density; on the diagonal the first-order term cancels, leaving O(g^2)
    const double e1 = std::fabs(interp_density({0, 1e-2, {}}, 1.0) - bessel_density(0, 1.0));
    const double e2 = std::fabs(interp_density({0, 1e-3, {}}, 1.0) - bessel_density(0, 1.0));
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(100.0).epsilon(0.1));
    // g -> infinity: g S(2 sqrt(g x), 2 sqrt(g y); g) tends to the independent-product kernel
    const double g = 1e3, x = 0.5, y = 1.2;
    const double v = g * interp_kernel({0, g, {}}, 2 * std::sqrt(g * x), 2 * std::sqrt(g * y));
    CHECK(rel(v, meijer_kernel(0.0, 0.0, x, y)) < 1e-3);
}

TEST_CASE("unfolded bessel density approaches 1/pi") {
    CHECK(std::fabs(rho_micro_bessel(0, 30.0) - 1.0 / kPi) < 1e-2);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(interp_kernel({0, 0.0, {}}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(interp_kernel({-1, 1.0, {}}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(bessel_kernel(0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(interp_kernel({0, 1.0, {0.5, 400}}, 1.0, 2.0), DomainError);
}
