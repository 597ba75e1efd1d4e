#pragma once

#include "gnvar/fieldsystem.hpp"

#include <functional>

namespace gnvar {

// ---------------------------------------------------------------------------
// vertical vector fields on the field bundle, as slot-function tapes
// ---------------------------------------------------------------------------

// Component i is
//     base_i(x, slots)  +  sum over attached terms  coeff * D_mu(aux_k)
// where aux_k are auxiliary first-order slot functions and D_mu is the
// total derivative. The split keeps every tape first-order in slots; the
// total derivatives are taken at the jet level (along the section) or
// through the commutator rule (for slot partials).
struct VerticalSlotFunction {
    Tape base; // outputs: one per system component
    Tape aux;  // outputs: auxiliary scalars, may be empty

    struct DTerm {
        int comp;
        int aux_index;
        int mu;
        double coeff;
    };
    std::vector<DTerm> d_terms;

    // slot-independent inputs (xi and its derivatives as jets), built per
    // evaluation point at the requested order
    std::function<std::vector<Jet>(const std::array<double, 4>&, int)> make_params;
};

// Xi_V jets along the section at the order of `sj` (aux runs one order up).
std::vector<Jet> eval_vertical_jets(const VerticalSlotFunction& v, const FieldSystem& sys,
                                    const std::array<double, 4>& point, int order);

// ---------------------------------------------------------------------------
// Euler-Lagrange machinery
// ---------------------------------------------------------------------------

struct ElPass {
    Jet L;                  // density along the section
    std::array<Jet, 4> dLdx; // explicit x-gradient
    std::vector<Jet> P;     // per slot id: dL/dy^i_alpha along the section
    std::vector<Jet> E;     // per component, order exec - max_slot_order
};

// One gradient pass: forward + reverse sweep at `exec_order`, then
// E_i = sum_alpha (-1)^|alpha| D_alpha P_{i alpha} with jet-level D.
ElPass euler_lagrange_pass(const Lagrangian& lag, const FieldSystem& sys,
                           const std::array<double, 4>& point, int exec_order);

std::vector<double> euler_lagrange(const Lagrangian& lag, const FieldSystem& sys,
                                   const std::array<double, 4>& point);

// First-order momentum p^mu_i = dL/dy^i_mu. Errors out for higher order.
std::vector<std::array<double, 4>> momentum(const Lagrangian& lag, const FieldSystem& sys,
                                            const std::array<double, 4>& point);

// d_H of a horizontal (n-1)-form given through its dual components.
Jet horizontal_differential(const std::array<Jet, 4>& current);

// ---------------------------------------------------------------------------
// the first Noether theorem, two independent assemblies
// ---------------------------------------------------------------------------

struct AutJets {
    std::array<Jet, 4> xi;
    Mat4<Jet> dxi; // dxi[mu][nu] = d_mu xi^nu
};
AutJets build_aut_jets(const std::array<Expr, 4>& xi, const ConstMap& consts,
                       const std::array<double, 4>& point, int order);

struct Theorem1Result {
    double lhs = 0;      // drag of the density along the prolonged field
    double rhs = 0;      // Xi_V . E + d_H(j Xi_V . p + xi . L)
    double residual = 0; // |lhs - rhs|
};
Theorem1Result variational_lie_derivative(const Lagrangian& lag, const FieldSystem& sys,
                                          const VerticalSlotFunction& lift,
                                          const std::array<Expr, 4>& xi,
                                          const std::array<double, 4>& point);

// ---------------------------------------------------------------------------
// second variation, Jacobi morphism, self-adjointness
// ---------------------------------------------------------------------------

double second_variation(const Lagrangian& lag, const FieldSystem& sys,
                        const std::vector<Expr>& eta, const std::array<double, 4>& point);

std::vector<double> jacobi_morphism(const Lagrangian& lag, const FieldSystem& sys,
                                    const std::vector<Expr>& eta,
                                    const std::array<double, 4>& point);

struct LatticeSpec {
    std::array<double, 4> lo{0, 0, 0, 0};
    std::array<double, 4> hi{2 * 3.14159265358979323846, 2 * 3.14159265358979323846,
                             2 * 3.14159265358979323846, 2 * 3.14159265358979323846};
    std::array<int, 4> dims{4, 4, 4, 4};
};

struct SelfAdjointness {
    double q12 = 0, q21 = 0;
    double asymmetry = 0;     // |q12 - q21| / max(|q12|, 1)
    double onshell_max = 0;   // max |E| over the lattice
    bool onshell_warning = false;
};
SelfAdjointness self_adjointness_check(const Lagrangian& lag, const FieldSystem& sys,
                                       const std::vector<Expr>& eta1,
                                       const std::vector<Expr>& eta2, const LatticeSpec& lattice,
                                       double onshell_tol = 1e-8);

// ---------------------------------------------------------------------------
// Noether identity checks
// ---------------------------------------------------------------------------

// Xi_V . E_n( Xi_V . E_n(lambda) ), assembled from the linearized
// Euler-Lagrange operator (slot Hessian) and the lift's slot gradients.
double bergmann_bianchi_check(const Lagrangian& lag, const FieldSystem& sys,
                              const VerticalSlotFunction& lift,
                              const std::array<double, 4>& point);

// L_{j Xi_H} [ L_{j Xi_V} lambda ]: horizontal drag of the vertical
// variational Lie derivative.
double naturality_check(const Lagrangian& lag, const FieldSystem& sys,
                        const VerticalSlotFunction& lift, const std::array<Expr, 4>& xi,
                        const std::array<double, 4>& point);

// ---------------------------------------------------------------------------
// contact splitting of a lifted vector field
// ---------------------------------------------------------------------------

struct SplitResult {
    std::array<double, 4> xi_h;              // horizontal coefficients
    std::vector<std::vector<double>> xi_v;   // per component, per multi-index id <= s
    std::vector<std::vector<double>> prolonged; // (j Xi)^i_alpha, same shape
};

// xi and the lift components Xi^i are supplied as jets along the section;
// field jets must carry order >= s + 1.
SplitResult split_lifted_vector(const std::array<Jet, 4>& xi_jets,
                                const std::vector<Jet>& lift_jets,
                                const std::vector<Jet>& field_jets, int s);

} // namespace gnvar
