#pragma once

#include "gnvar/lifts.hpp"

namespace gnvar {

// Tetrad-block field equations converted to mixed-index tensors, plus the
// raw torsion-sector (connection-block) Euler-Lagrange values.
//
// G and T are read off variationally: the theta-block Euler-Lagrange
// density of lambda_EC is -(1/k) G^a_b eps_a and that of lambda_D is
// T^a_b eps_a. The plane-wave energy density pins the orientation
// (T^0_0 = m at rest-frame normalization).
struct FieldEquations {
    std::array<std::array<double, 4>, 4> G; // G^a_b
    std::array<std::array<double, 4>, 4> T; // T^a_b
    std::array<double, 24> omega_block;     // E over omega components, (p, mu)
    std::vector<double> E_total;            // all 48 rows of the total Lagrangian
};
FieldEquations field_equation_forms(const FieldConfig& cfg, const std::array<double, 4>& point);

// The conserved current of the total Lagrangian along the lift, as the
// dual-vector components J^mu, with the four-term breakdown. The total is
// the boundary current of the first Noether theorem (sign fixed so that
// J^0 is the canonical energy density for time translations); the
// D-eps term carries the torsion-sector remainder, with u_{ab}^c read
// variationally from the omega-block field equations.
struct NoetherCurrent {
    std::array<double, 4> total{};
    std::array<double, 4> einstein{};
    std::array<double, 4> matter{};
    std::array<double, 4> deps{};
    std::array<double, 4> exact{};
    double breakdown_residual = 0;
};
NoetherCurrent noether_current(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                               const std::array<double, 4>& point);

// nu = -(1/2k) Xi_v^{ab} eps_ab; six 2-form components in kPlanes order.
struct Superpotential {
    std::array<double, 6> nu{};
};
Superpotential superpotential(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                              const std::array<double, 4>& point);

// (d_H nu)^mu at the point.
std::array<double, 4> superpotential_divergence(const FieldConfig& cfg,
                                                const InfinitesimalAutomorphism& aut,
                                                const std::array<double, 4>& point);

struct ConservationReport {
    double dHJ = 0;              // divergence of the total current
    double ddnu = 0;             // d_H d_H nu
    double current_minus_dnu = 0; // max_mu |J^mu - (d nu)^mu|
    double exact_two_path = 0;   // |exact term - d_H nu| componentwise max
    double onshell_max = 0;      // max |E_i| over the 48 rows
};
ConservationReport conservation_check(const FieldConfig& cfg,
                                      const InfinitesimalAutomorphism& aut,
                                      const std::array<double, 4>& point);

struct IdentityReport {
    double bergmann_bianchi = 0;
    double naturality = 0;
};
IdentityReport noether_identity_point(const FieldConfig& cfg,
                                      const InfinitesimalAutomorphism& aut,
                                      const std::array<double, 4>& point);

} // namespace gnvar
