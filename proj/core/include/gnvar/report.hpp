#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gnvar {

struct PointRecord {
    std::array<double, 4> x{};
    // named residuals in deterministic (map) order
    std::map<std::string, double> residuals;
};

struct SuiteResult {
    std::string name;
    double tolerance = 0;
    std::vector<PointRecord> points;
    double max_residual = 0;
    bool pass = true;
    bool has_failure = false;
    PointRecord first_failure; // first failing point, when any
    std::string note;          // convention flags surfaced in reports
    std::string error;         // populated when the suite itself failed
};

struct Report {
    std::string tool_version;
    std::string scenario_name;
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool all_pass = true;
    double wall_ms = 0; // never part of the default JSON encoding
};

// Deterministic: identical (scenario, seed, version) produce identical
// bytes. Timing is opt-in and excluded from the determinism contract.
std::string emit_report_json(const Report& r, bool include_timing = false);
std::string emit_report_text(const Report& r);

} // namespace gnvar
