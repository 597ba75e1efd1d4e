#pragma once

#include "gnvar/report.hpp"
#include "gnvar/scenario.hpp"

namespace gnvar {

// Verification suites runnable from a scenario. Each evaluates residuals
// at the seeded sample points (or on the periodic lattice) and compares
// against its tolerance.
std::vector<std::string> suite_names();
double default_tolerance(const std::string& suite);

Report run_suites(const Scenario& sc, const std::vector<std::string>& which);

} // namespace gnvar
