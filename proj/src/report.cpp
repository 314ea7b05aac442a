#include "hek/report.hpp"

#include "hek/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hek {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::reported: return "reported";
    }
    return "fail";
}

CheckResult& VerificationReport::add_bound(std::string id, std::string anchor, double measured, double tolerance,
                                           std::string detail) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    return add_flag(std::move(id), std::move(anchor), ok, measured, tolerance, std::move(detail));
}

CheckResult& VerificationReport::add_flag(std::string id, std::string anchor, bool ok, double measured,
                                          double tolerance, std::string detail) {
    CheckResult c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.measured = measured;
    c.tolerance = tolerance;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.detail = std::move(detail);
    checks.push_back(std::move(c));
    return checks.back();
}

CheckResult& VerificationReport::add_reported(std::string id, std::string anchor, double measured, std::string detail) {
    CheckResult c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.measured = measured;
    c.tolerance = NAN;
    c.status = CheckStatus::reported;
    c.detail = std::move(detail);
    checks.push_back(std::move(c));
    return checks.back();
}

bool VerificationReport::passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

int VerificationReport::count(CheckStatus s) const {
    int n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

namespace {

nlohmann::json num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["config"] = config;
    j["config_hash"] = config_hash(config);
    j["passed"] = passed();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"id", c.id},
                       {"anchor", c.anchor},
                       {"measured", num(c.measured)},
                       {"tolerance", num(c.tolerance)},
                       {"status", status_name(c.status)},
                       {"detail", c.detail},
                       {"seconds", c.seconds}});
    }
    j["checks"] = arr;
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "  config " << config_hash(config) << "\n";
    for (const auto& c : checks) {
        char line[512];
        std::snprintf(line, sizeof line, "%-9s %-44s measured %-12.4g tol %-10.3g %6.2fs  %s", status_name(c.status),
                      c.id.c_str(), c.measured, c.tolerance, c.seconds, c.anchor.c_str());
        os << line;
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
    }
    os << count(CheckStatus::pass) << " pass, " << count(CheckStatus::fail) << " fail, "
       << count(CheckStatus::reported) << " reported\n";
    return os.str();
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string config_hash(const nlohmann::json& config) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : config.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    out << '#' << table.meta.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw std::runtime_error("csv row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(f, table);
    if (!f) throw std::runtime_error("write failed for " + path);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    // strtod rather than stod: subnormals must parse back instead of throwing
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw std::runtime_error("bad csv number: " + s);
    return v;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#') throw std::runtime_error("csv: missing '#' metadata line");
    t.meta = nlohmann::json::parse(line.substr(1));
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header row");
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.columns.size()) throw std::runtime_error("csv: row width does not match the header");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_csv(f);
}

}  // namespace hek
