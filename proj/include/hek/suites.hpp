#pragma once
// Verification suites: every module invariant plus the limit-theorem
// convergence studies, each as a named check producing one CheckResult.

#include "hek/hard_edge.hpp"
#include "hek/meijer.hpp"
#include "hek/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hek {

struct SuiteOptions {
    Truncation trunc;
    MBQuadSpec mb;
    std::uint64_t seed = 20241016;

    nlohmann::json to_json() const;
};

struct CheckSpec {
    std::string id;
    std::string anchor;
    std::string suite;  // identities, representations or limits; empty for extra checks
};

/// The checks run by `verify`: exactly the module invariants and the limit studies.
const std::vector<CheckSpec>& verify_registry();
/// Additional named checks used by the acceptance runner (figure regimes, single cases).
const std::vector<CheckSpec>& extra_registry();

/// identities, limits, representations, all
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one check from either registry; throws std::out_of_range for unknown ids.
CheckResult run_check(const std::string& id, const SuiteOptions& opt = {});

/// Runs the suite's checks on the worker pool and assembles the report in registry order.
VerificationReport run_suite(const std::string& name, const SuiteOptions& opt = {});

/// Least-squares slope of log(err) against log(n) with its standard error.
struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double intercept = 0.0;
};
SlopeFit loglog_slope(const std::vector<double>& n, const std::vector<double>& err);

}  // namespace hek
