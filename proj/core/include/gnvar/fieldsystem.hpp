#pragma once

#include "gnvar/dual.hpp"
#include "gnvar/geometry.hpp"
#include "gnvar/tape.hpp"

#include <functional>
#include <vector>

namespace gnvar {

// Slot bank of a field system: one slot per (component, multi-index) with
// |alpha| <= 2, multi-indices in the global grlex enumeration. Id 0 is the
// value, ids 1..4 the first derivatives.
struct SlotLayout {
    int n_components = 0;
    static constexpr int kPerComp = 15;

    int n_slots() const { return n_components * kPerComp; }
    int slot(int comp, int mid) const { return comp * kPerComp + mid; }
    int value_slot(int comp) const { return slot(comp, 0); }
    int deriv_slot(int comp, int mu) const { return slot(comp, 1 + mu); }
    int comp_of(int slot_id) const { return slot_id / kPerComp; }
    int mid_of(int slot_id) const { return slot_id % kPerComp; }
};

// Ordered list of field components with their section expressions.
// Component order is part of every report: theta block, omega block, psi
// block for the Einstein-Cartan-Dirac system, or whatever a toy system
// declares.
struct FieldSystem {
    std::vector<Expr> section;
    ConstMap consts;

    int n() const { return static_cast<int>(section.size()); }
    SlotLayout layout() const { return {n()}; }
};

// Jets of every slot along the section, truncated to one execution order.
struct SlotJets {
    std::array<double, 4> point{};
    int order = 0;
    std::array<Jet, 4> x;
    std::vector<Jet> slots;
};

// Slot (i, alpha) carries D_alpha y^i truncated to exec_order; the section
// expressions are evaluated once at exec_order + max_slot_order.
SlotJets build_slot_jets(const FieldSystem& sys, const std::array<double, 4>& point,
                         int exec_order, int max_slot_order);

// Direction jets for perturbation channels: D_alpha eta^i per slot.
std::vector<Jet> build_direction_jets(const FieldSystem& sys, const std::vector<Expr>& eta,
                                      const std::array<double, 4>& point, int exec_order,
                                      int max_slot_order);

// ---------------------------------------------------------------------------
// Einstein-Cartan-Dirac system
// ---------------------------------------------------------------------------

// Component numbering of the 48-field system.
struct EcIndex {
    static constexpr int kN = 48;
    static int theta(int a, int mu) { return a * 4 + mu; }
    static int omega(int p, int mu) { return 16 + p * 4 + mu; }
    static int psi(int i, int reim) { return 40 + 2 * i + reim; }
};

FieldSystem ec_field_system(const FieldConfig& cfg);

// Field bundle values from a slot accessor; get(comp, mid) -> S.
template <class S, class GetSlot>
EcFields<S> ec_fields_from_slots(const std::array<S, 4>& x, const GetSlot& get) {
    EcFields<S> f;
    f.x = x;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
            f.theta[a][mu] = get(EcIndex::theta(a, mu), 0);
            for (int nu = 0; nu < 4; ++nu)
                f.dtheta[nu][a][mu] = get(EcIndex::theta(a, mu), 1 + nu);
        }
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu) {
            f.omega[p][mu] = get(EcIndex::omega(p, mu), 0);
            for (int nu = 0; nu < 4; ++nu)
                f.domega[nu][p][mu] = get(EcIndex::omega(p, mu), 1 + nu);
        }
    for (int i = 0; i < 4; ++i) {
        f.psi[i] = Cplx<S>(get(EcIndex::psi(i, 0), 0), get(EcIndex::psi(i, 1), 0));
        for (int mu = 0; mu < 4; ++mu)
            f.dpsi[mu][i] =
                Cplx<S>(get(EcIndex::psi(i, 0), 1 + mu), get(EcIndex::psi(i, 1), 1 + mu));
    }
    return f;
}

enum class LagrangianKind { EinsteinCartan, Dirac, Total };

// First-order scalar-density Lagrangian as a slot-function tape. Frozen
// background data (anything independent of the varied fields) may enter
// through the parameter bank instead of being recomputed inside the tape.
struct Lagrangian {
    Tape tape;              // one output: the density
    int max_slot_order = 1; // slot orders the tape may reference
    std::function<std::vector<Jet>(const std::array<double, 4>&, int)> make_params;

    std::vector<Jet> params(const std::array<double, 4>& point, int order) const {
        return make_params ? make_params(point, order) : std::vector<Jet>{};
    }
};

Lagrangian record_ec_lagrangian(const FieldConfig& cfg, LagrangianKind kind);

// Spinor-sector system: the 8 real psi components vary, the tetrad and
// spin connection stay frozen background functions baked into the tape.
FieldSystem psi_field_system(const FieldConfig& cfg);
Lagrangian record_psi_dirac_lagrangian(const FieldConfig& cfg);

} // namespace gnvar
