#include "gnvar/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace gnvar {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_json(const PointRecord& p) {
    ordered_json j;
    j["x"] = p.x;
    ordered_json res = ordered_json::object();
    for (const auto& [k, v] : p.residuals) res[k] = v;
    j["residuals"] = res;
    return j;
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::string emit_report_json(const Report& r, bool include_timing) {
    ordered_json j;
    j["tool"] = {{"name", "gnvar"}, {"version", r.tool_version}};
    j["scenario"] = {{"name", r.scenario_name},
                     {"hash", hash_hex(r.scenario_hash)},
                     {"seed", r.seed}};
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& s : r.suites) {
        ordered_json sj;
        sj["name"] = s.name;
        sj["tolerance"] = s.tolerance;
        sj["pass"] = s.pass;
        sj["max_residual"] = s.max_residual;
        if (!s.note.empty()) sj["note"] = s.note;
        if (!s.error.empty()) sj["error"] = s.error;
        if (s.has_failure) sj["first_failure"] = point_json(s.first_failure);
        ordered_json pts = ordered_json::array();
        for (const PointRecord& p : s.points) pts.push_back(point_json(p));
        sj["points"] = pts;
        suites.push_back(sj);
    }
    j["suites"] = suites;
    j["all_pass"] = r.all_pass;
    if (include_timing) j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
}

std::string emit_report_text(const Report& r) {
    std::ostringstream out;
    out << "gnvar " << r.tool_version << "  scenario '" << r.scenario_name << "'  hash "
        << hash_hex(r.scenario_hash) << "  seed " << r.seed << "\n\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-20s %8s %14s %12s  %s\n", "suite", "points",
                  "max residual", "tolerance", "status");
    out << line;
    out << "  " << std::string(68, '-') << "\n";
    for (const SuiteResult& s : r.suites) {
        std::snprintf(line, sizeof(line), "  %-20s %8zu %14.3e %12.1e  %s\n", s.name.c_str(),
                      s.points.size(), s.max_residual, s.tolerance,
                      s.error.empty() ? (s.pass ? "PASS" : "FAIL") : "ERROR");
        out << line;
        if (!s.error.empty()) out << "      error: " << s.error << "\n";
        if (s.has_failure) {
            std::snprintf(line, sizeof(line),
                          "      first failure at (%.4f, %.4f, %.4f, %.4f)\n",
                          s.first_failure.x[0], s.first_failure.x[1], s.first_failure.x[2],
                          s.first_failure.x[3]);
            out << line;
            for (const auto& [k, v] : s.first_failure.residuals) {
                std::snprintf(line, sizeof(line), "        %-24s %.6e\n", k.c_str(), v);
                out << line;
            }
        }
        if (!s.note.empty()) out << "      note: " << s.note << "\n";
    }
    out << "\n  overall: " << (r.all_pass ? "PASS" : "FAIL");
    std::snprintf(line, sizeof(line), "   (%.1f ms)\n", r.wall_ms);
    out << line;
    return out.str();
}

} // namespace gnvar
