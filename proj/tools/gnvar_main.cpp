#include "gnvar/report.hpp"
#include "gnvar/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace gnvar;

int main(int argc, char** argv) {
    CLI::App app{
        "gnvar: variational identity checks for Einstein-Cartan-Dirac field configurations"};
    app.set_version_flag("--version", std::string(GNVAR_VERSION));
    app.require_subcommand(0, 1);

    auto* run = app.add_subcommand("run", "run verification suites on a scenario");
    std::string scenario_path, suites_arg, report_path, format = "text";
    int points_override = -1, order_override = -1;
    long long seed_override = -1;
    bool timings = false;
    run->add_option("--scenario", scenario_path, "scenario file (key-table or JSON)")->required();
    run->add_option("--suites", suites_arg, "comma-separated suite list (default: scenario's)");
    run->add_option("--points", points_override, "override the sample point count");
    run->add_option("--seed", seed_override, "override the sampling seed");
    run->add_option("--order", order_override, "override the jet evaluation order");
    run->add_option("--report", report_path, "write the JSON report to this path");
    run->add_option("--format", format, "stdout format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    run->add_flag("--timings", timings, "include wall-clock in the JSON report");

    auto* suites_cmd = app.add_subcommand("suites", "list the available suites");

    CLI11_PARSE(app, argc, argv);

    if (suites_cmd->parsed()) {
        for (const auto& name : suite_names())
            std::cout << name << "  (default tolerance " << default_tolerance(name) << ")\n";
        return 0;
    }
    if (!run->parsed()) {
        std::cout << app.help();
        return 0;
    }

    try {
        Scenario sc = load_scenario(scenario_path);
        if (points_override > 0) sc.sampling.points = points_override;
        if (seed_override >= 0) sc.sampling.seed = static_cast<std::uint64_t>(seed_override);
        if (order_override >= 0) {
            sc.sampling.order = order_override;
            sc.fields.order = order_override;
        }

        std::vector<std::string> which;
        if (!suites_arg.empty()) {
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                std::size_t comma = suites_arg.find(',', pos);
                which.push_back(suites_arg.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos));
                pos = (comma == std::string::npos) ? std::string::npos : comma + 1;
            }
        } else if (!sc.suites.empty()) {
            which = sc.suites;
        } else {
            which = suite_names();
        }

        Report rep = run_suites(sc, which);

        if (!report_path.empty()) {
            std::ofstream out(report_path, std::ios::binary);
            if (!out) throw ScenarioError("cannot write report to '" + report_path + "'");
            out << emit_report_json(rep, timings);
        }
        if (format == "json")
            std::cout << emit_report_json(rep, timings);
        else
            std::cout << emit_report_text(rep);
        return rep.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
