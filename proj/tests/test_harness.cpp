// CLI contract tests. The binary path comes from HEK_CLI (set by ctest).
#include "hek/hard_edge.hpp"
#include "hek/report.hpp"
#include "hek/suites.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>

using namespace hek;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* cli = std::getenv("HEK_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "HEK_CLI must point at the hek binary");
    const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

CsvTable run_csv(const std::string& args) {
    const RunResult r = run_cli(args);
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    return read_csv(is);
}

std::string tmp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("coverage lock: verify enumerates exactly the module invariants and limit studies") {
    const std::set<std::string> expected{
        // special functions
        "specfun.wronskian", "specfun.bessel_j_recurrence", "specfun.wright_bessel_reduction", "specfun.series_tail_bound",
        // finite-N kernel
        "finite.biorthonormality", "finite.reproducing", "finite.trace", "finite.cd_vs_sum", "finite.det_vs_joint_density",
        "finite.gauge_determinants",
        // hard-edge kernels
        "hard_edge.residue_moments", "hard_edge.residue_moments_further", "hard_edge.integral_identity_1",
        "hard_edge.integral_identity_2", "hard_edge.integral_identity_3", "hard_edge.polynomial_forms",
        "hard_edge.integrable_vs_double_sum", "hard_edge.f_residue_vs_kummer", "hard_edge.small_g_diagonal_limit",
        "hard_edge.large_g_limit", "hard_edge.conjectured_asymptotics",
        // Mellin-Barnes and comparison kernels
        "meijer.offset_invariance", "meijer.imaginary_residual", "meijer.line_vs_u_integral", "borodin.bessel_map",
        "borodin.meijer_relation",
        // ensemble
        "ensemble.chi_square_one_point", "ensemble.linear_statistic_mean", "ensemble.seed_independence",
        // harness
        "harness.csv_round_trip", "harness.determinism",
        // limit-theorem convergence studies
        "limits.kappa2_bessel", "limits.kappa1_interpolating", "limits.kappa_small_independent"};
    std::set<std::string> got;
    for (const auto& c : verify_registry()) {
        CHECK_MESSAGE(got.insert(c.id).second, "duplicate check id " << c.id);
        CHECK(is_suite(c.suite));
        CHECK(c.suite != "all");
    }
    for (const auto& id : expected) CHECK_MESSAGE(got.count(id) == 1, "missing check " << id);
    for (const auto& id : got) CHECK_MESSAGE(expected.count(id) == 1, "unlisted check " << id);
}

TEST_CASE("kernel: bessel diagonal row count") {
    const CsvTable t = run_csv("kernel --type bessel --nu 0 --diag --grid 0.1:20:200");
    CHECK(t.rows.size() == 200);
    CHECK(t.columns == std::vector<std::string>{"x", "y", "K"});
    CHECK(t.meta.contains("config_hash"));
    CHECK(t.meta["config"]["type"] == "bessel");
}

TEST_CASE("kernel: interpolating diagonal is the library value bit for bit") {
    const CsvTable t = run_csv("kernel --type interp --nu 0 --g 1 --diag --grid 1:1:1");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][2] == interp_density({0, 1.0, {}}, 1.0));
}

TEST_CASE("kernel: cartesian grid and output file round trip") {
    const std::string path = tmp_path("hek_kernel_test.csv");
    REQUIRE(run_cli("kernel --type borodin --alpha 0 --theta 1.5 --grid 0.5:2:3 --out " + path).code == 0);
    const CsvTable t = read_csv_file(path);
    CHECK(t.rows.size() == 9);
    std::ostringstream os;
    write_csv(os, t);
    std::istringstream is(os.str());
    const CsvTable back = read_csv(is);
    CHECK(back.rows == t.rows);
    CHECK(back.meta == t.meta);
    std::filesystem::remove(path);
}

TEST_CASE("csv cells carry 17 significant digits") {
    const RunResult r = run_cli("kernel --type bessel --nu 1 --diag --grid 0.3:0.3:1");
    REQUIRE(r.code == 0);
    const std::string last = r.out.substr(r.out.rfind(',') + 1);
    CHECK(std::stod(last) == bessel_density(1, 0.3));
}

TEST_CASE("runs are deterministic and the hash tracks the config") {
    const RunResult a = run_cli("kernel --type meijer --nu 1 --nu2 0.5 --grid 0.5:1.5:2");
    const RunResult b = run_cli("kernel --type meijer --nu 1 --nu2 0.5 --grid 0.5:1.5:2");
    const RunResult c = run_cli("kernel --type meijer --nu 1 --nu2 0.5 --grid 0.5:1.5:3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream ia(a.out), ic(c.out);
    CHECK(read_csv(ia).meta["config_hash"] != read_csv(ic).meta["config_hash"]);
}

TEST_CASE("density: x column is increasing") {
    const CsvTable t = run_csv("density --type rho-micro-interp --nu 0 --g 0.5 --grid 0.5:5:10");
    REQUIRE(t.rows.size() == 10);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][0] > t.rows[i - 1][0]);
}

TEST_CASE("density: unfolded curves share the 1/pi asymptote over [10, 20]") {
    const CsvTable t = run_csv("density --figure 2 --alpha 0 --grid 10:20:11");
    REQUIRE(t.columns.size() == 4);
    for (std::size_t j = 1; j < 4; ++j) {
        double mean = 0;
        for (const auto& row : t.rows) mean += row[j];
        mean /= static_cast<double>(t.rows.size());
        CHECK_MESSAGE(std::fabs(mean * kPi - 1.0) < 0.02, t.columns[j] << " mean " << mean);
    }
}

TEST_CASE("density: interpolating curve at g = 0.1 tracks the bessel curve on [0.5, 5]") {
    const CsvTable t = run_csv("density --figure 1 --grid 0.5:5:46");
    const auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
    };
    for (int nu : {0, 2}) {
        const std::size_t b = col("nu" + std::to_string(nu) + "_g0"), s = col("nu" + std::to_string(nu) + "_g0.1");
        REQUIRE(s < t.columns.size());
        double worst = 0;
        for (const auto& row : t.rows) worst = std::max(worst, std::fabs(row[s] - row[b]) / std::fabs(row[b]));
        CHECK_MESSAGE(worst < 0.02, "nu = " << nu << ": relative sup deviation " << worst);
    }
}

TEST_CASE("mc-compare: passes at the reference point and echoes the seed") {
    const std::string out = tmp_path("hek_mc_hist.csv"), batch = tmp_path("hek_mc_batch.csv");
    const RunResult r = run_cli("mc-compare --n-size 3 --nu 1 --mu 0.6 --samples 20000 --seed 4242 --json --out " + out +
                                " --batch-out " + batch);
    CHECK(r.code == 0);
    const auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["passed"] == true);
    CHECK(rep["config"]["seed"] == 4242);
    const CsvTable h = read_csv_file(out);
    CHECK(h.rows.size() == 30);
    CHECK(std::filesystem::exists(batch + ".json"));
    for (const auto& p : {out, batch, batch + ".json"}) std::filesystem::remove(p);
}

TEST_CASE("mc-compare: N = 0 is a config error") {
    CHECK(run_cli("mc-compare --n-size 0 --nu 1 --mu 0.6").code == 2);
}

TEST_CASE("verify: identities suite passes with JSON report") {
    const RunResult r = run_cli("verify --suite identities --json");
    CHECK(r.code == 0);
    const auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["passed"] == true);
    CHECK(rep.contains("config_hash"));
    for (const auto& c : rep["checks"]) {
        CHECK(c["status"] == "pass");
        CHECK(c["measured"].get<double>() <= c["tolerance"].get<double>());
        // the tail-bound check measures a ratio in units of eps |result|, not an error
        if (c["id"] != "specfun.series_tail_bound") CHECK(c["measured"].get<double>() < 1e-8);
    }
}

TEST_CASE("verify: limits suite reports the conjecture without gating") {
    const RunResult r = run_cli("verify --suite limits --json");
    CHECK(r.code == 0);
    const auto rep = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : rep["checks"])
        if (c["id"] == "hard_edge.conjectured_asymptotics") {
            found = true;
            CHECK(c["status"] == "reported");
        }
    CHECK(found);
}

TEST_CASE("sweep: small-g diagonal error trends down with g") {
    const CsvTable t = run_csv("sweep --diagnostic small-g-diagonal --nu 0 --x 1 --grid 0.001:1:7 --log-grid");
    REQUIRE(t.rows.size() == 7);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][2] == 1.0);
}

TEST_CASE("sweep: one row per N") {
    const CsvTable t = run_csv("sweep --diagnostic kappa1-error --g 0.5 --nu 1 --grid 10:40:4");
    REQUIRE(t.rows.size() == 4);
    CHECK(t.columns[0] == "n_size");
    CHECK(t.rows[3][0] == 40.0);
}

TEST_CASE("config errors exit with status 2") {
    CHECK(run_cli("sweep --diagnostic small-g-diagonal --grid 0.1:1:0").code == 2);
    CHECK(run_cli("kernel --type nope --grid 1:2:2").code == 2);
    CHECK(run_cli("kernel --type interp --g -1 --grid 1:2:2").code == 2);
    CHECK(run_cli("kernel --type bessel --grid 1:2").code == 2);
    CHECK(run_cli("verify --suite nope").code == 2);
    CHECK(run_cli("--no-such-flag").code == 2);
    CHECK(run_cli("").code == 2);
}

TEST_CASE("worker cap does not change results") {
    const char* cli = std::getenv("HEK_CLI");
    REQUIRE(cli != nullptr);
    const std::string args = "kernel --type interp --nu 1 --g 0.7 --grid 0.5:2:4";
    const RunResult a = run_cli(args);
    setenv("HEK_THREADS", "1", 1);
    const RunResult b = run_cli(args);
    unsetenv("HEK_THREADS");
    CHECK(a.out == b.out);
}
