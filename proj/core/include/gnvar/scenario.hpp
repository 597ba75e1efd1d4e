#pragma once

#include "gnvar/lifts.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gnvar {

struct SamplingSpec {
    std::array<double, 4> box_lo{-0.5, -0.5, -0.5, -0.5};
    std::array<double, 4> box_hi{0.5, 0.5, 0.5, 0.5};
    int points = 20;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::array<int, 4> lattice{5, 5, 5, 5};
    std::array<double, 4> lattice_lo{0, 0, 0, 0};
    std::array<double, 4> lattice_hi{2 * 3.14159265358979323846, 2 * 3.14159265358979323846,
                                     2 * 3.14159265358979323846, 2 * 3.14159265358979323846};
    int order = 2;
};

struct Scenario {
    std::string name;
    FieldConfig fields;
    InfinitesimalAutomorphism aut;
    SamplingSpec sampling;
    std::vector<std::string> suites;
    std::map<std::string, double> tolerances;
    std::string source_text; // raw file bytes, hashed into reports
};

// Flat key-table format with [section] headers; JSON accepted as the
// alternate encoding (detected by a leading '{').
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace gnvar
