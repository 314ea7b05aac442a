#pragma once
// Verification reports and the CSV schema shared by the CLI and batch persistence:
// UTF-8, ',' separator, 17 significant digits, one leading '#'-prefixed JSON line.

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hek {

enum class CheckStatus { pass, fail, reported };

const char* status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string anchor;  // the result the check is tied to, in words
    double measured = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::fail;
    std::string detail;
    double seconds = 0.0;
};

/// Checks whose measured value must not exceed the tolerance pass; reported
/// checks never gate.
class VerificationReport {
public:
    std::string suite;
    nlohmann::json config = nlohmann::json::object();
    std::vector<CheckResult> checks;

    CheckResult& add_bound(std::string id, std::string anchor, double measured, double tolerance, std::string detail = {});
    CheckResult& add_flag(std::string id, std::string anchor, bool ok, double measured, double tolerance, std::string detail = {});
    CheckResult& add_reported(std::string id, std::string anchor, double measured, std::string detail = {});

    bool passed() const;
    int count(CheckStatus s) const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// %.17g with nan / inf spelled as in JSON-compatible text.
std::string format_double(double v);

/// Hex FNV-1a of the compact JSON dump.
std::string config_hash(const nlohmann::json& config);

struct CsvTable {
    nlohmann::json meta = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace hek
