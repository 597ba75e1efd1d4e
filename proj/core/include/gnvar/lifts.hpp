#pragma once

#include "gnvar/variational.hpp"

namespace gnvar {

// Infinitesimal automorphism of the underlying principal bundle: base
// vector field xi plus vertical so(1,3) components, either given
// explicitly or generated by the Kosmann prescription
// Xi_v^{ab} = -nabla~^[a xi^b].
struct InfinitesimalAutomorphism {
    enum class Mode { Explicit, Kosmann };

    std::array<Expr, 4> xi;
    Mode mode = Mode::Explicit;
    std::array<Expr, 6> xi_v;                 // explicit mode, kPlanes order
    std::array<double, 6> kosmann_offset{};   // constant detuning, negative controls

    static InfinitesimalAutomorphism kosmann(const std::array<Expr, 4>& xi_exprs) {
        InfinitesimalAutomorphism a;
        a.xi = xi_exprs;
        a.mode = Mode::Kosmann;
        return a;
    }
};

// Xi_v jets at the geometry's point (Kosmann-generated or explicit).
std::array<Jet, 6> vertical_components(const InfinitesimalAutomorphism& aut,
                                       const PointGeometry& pg);

std::array<Jet, 6> kosmann_lift(const std::array<Expr, 4>& xi, const PointGeometry& pg);

// Lie derivatives of the three field species along the lift of `aut`.
Mat4<Jet> lie_derivative_tetrad(const InfinitesimalAutomorphism& aut, const PointGeometry& pg);
std::array<std::array<Jet, 4>, 6> lie_derivative_connection(const InfinitesimalAutomorphism& aut,
                                                            const PointGeometry& pg);
CVec4<Jet> lie_derivative_spinor(const InfinitesimalAutomorphism& aut, const PointGeometry& pg,
                                 const GammaRep& gam);

// Componentwise residuals of Xi_V = -pounds along the section, plus the
// spinor-connection split relation.
struct VerticalRelationReport {
    double theta_residual = 0;
    double omega_residual = 0;
    double psi_residual = 0;
    double oh_residual = 0; // Xi_V = Xi_v + (omt . psi) xi - u xi, spinor block
    double max_residual() const {
        return std::max(std::max(theta_residual, omega_residual),
                        std::max(psi_residual, oh_residual));
    }
};
VerticalRelationReport vertical_part_relation_check(const InfinitesimalAutomorphism& aut,
                                                    const FieldConfig& cfg,
                                                    const std::array<double, 4>& point);

// max |pounds_1 pounds_2 - pounds_2 pounds_1 - pounds_[1,2]| on the tetrad.
// Both automorphisms must be explicit.
double lie_bracket_homomorphism_check(const InfinitesimalAutomorphism& a1,
                                      const InfinitesimalAutomorphism& a2,
                                      const FieldConfig& cfg,
                                      const std::array<double, 4>& point);

// The lift's vertical parts as slot functions over the 48-component system,
// for the variational machinery (Xi_V^i = -pounds of each field, with the
// connection block's total-derivative term split off).
VerticalSlotFunction record_ec_lift(const FieldConfig& cfg,
                                    const InfinitesimalAutomorphism& aut);

} // namespace gnvar
