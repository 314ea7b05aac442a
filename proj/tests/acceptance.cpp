// Acceptance runner: one pass/fail line per criterion. Each criterion bundles
// named checks from the verification registry and a wall-clock budget.
// Criterion 9 is reported only and never gates.
#include "hek/suites.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace hek;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> checks;
    double budget_seconds;
    bool gating = true;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "identity suite",
         {"specfun.wronskian", "specfun.bessel_j_recurrence", "specfun.wright_bessel_reduction", "hard_edge.residue_moments",
          "hard_edge.residue_moments_further", "hard_edge.integral_identity_1", "hard_edge.integral_identity_2",
          "hard_edge.integral_identity_3"},
         10},
        {2, "finite-N structure",
         {"finite.cd_vs_sum", "finite.biorthonormality", "finite.trace", "finite.det_vs_joint_density"},
         60},
        {3, "Monte Carlo against the exact one-point function", {"ensemble.chi_square_one_point", "ensemble.single_matrix_ks"}, 90},
        {4, "strong coupling mu = g/N, order-one convergence", {"limits.kappa1_interpolating"}, 300},
        {5, "weak coupling and kappa < 1 limits", {"limits.kappa2_bessel", "limits.kappa_small_independent"}, 300},
        {6, "interpolation between Bessel and independent-product kernels",
         {"hard_edge.large_g_transition", "hard_edge.small_g_diagonal", "hard_edge.small_g_gauge_product"},
         120},
        {7, "unfolded densities",
         {"densities.bessel_unfolded_mean", "densities.mb_unfolded_mean", "densities.small_g_tracks_bessel"},
         180},
        {8, "representation equivalences",
         {"hard_edge.integrable_vs_double_sum", "hard_edge.f_residue_vs_kummer", "meijer.line_vs_u_integral",
          "borodin.bessel_map", "borodin.meijer_relation"},
         120},
        {9, "conjectured large-x asymptotics", {"hard_edge.conjectured_asymptotics"}, 120, false},
    };

    const SuiteOptions opt;
    bool all_ok = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string notes;
        for (const auto& id : c.checks) {
            const CheckResult r = run_check(id, opt);
            if (r.status == CheckStatus::fail) ok = false;
            std::printf("    %-9s %-40s measured %-12.4g tol %-10.3g %s\n", status_name(r.status), id.c_str(), r.measured,
                        r.tolerance, r.detail.c_str());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        if (!in_time) notes = " (over budget)";
        const char* verdict = !c.gating ? "REPORTED" : (ok && in_time) ? "PASS" : "FAIL";
        std::printf("criterion %d %-8s %-62s %7.1fs / %.0fs%s\n", c.number, verdict, c.title.c_str(), secs, c.budget_seconds,
                    notes.c_str());
        std::fflush(stdout);
        if (c.gating && !(ok && in_time)) all_ok = false;
    }
    return all_ok ? 0 : 1;
}
