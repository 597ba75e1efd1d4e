#include "gnvar/lifts.hpp"

#include <cmath>

namespace gnvar {

namespace {

const GammaRep& gam() {
    static GammaRep g = build_gamma();
    return g;
}

AutJets aut_jets_at(const InfinitesimalAutomorphism& aut, const ConstMap& consts,
                    const std::array<double, 4>& point, int order) {
    return build_aut_jets(aut.xi, consts, point, order);
}

// rho(A) psi with a jet-valued so element, entries in kPlanes order
CVec4<Jet> rho_action(const std::array<Jet, 6>& a, const CVec4<Jet>& psi, const Jet& zero) {
    CVec4<Jet> out;
    for (int i = 0; i < 4; ++i) {
        Cplx<Jet> acc(zero, zero);
        for (int p = 0; p < 6; ++p)
            for (int j = 0; j < 4; ++j) {
                std::complex<double> c = gam().gamma_ab[p][i][j] * (-0.5);
                if (c == 0.0) continue;
                acc = acc + (psi[j] * a[p]) * c;
            }
        out[i] = acc;
    }
    return out;
}

} // namespace

std::array<Jet, 6> kosmann_lift(const std::array<Expr, 4>& xi, const PointGeometry& pg) {
    AutJets a = build_aut_jets(xi, {}, pg.point, pg.order);
    return kosmann_vertical(pg.fields, pg.geom, a.xi, a.dxi);
}

std::array<Jet, 6> vertical_components(const InfinitesimalAutomorphism& aut,
                                       const PointGeometry& pg) {
    std::array<Jet, 6> xiv;
    if (aut.mode == InfinitesimalAutomorphism::Mode::Kosmann) {
        AutJets a = aut_jets_at(aut, {}, pg.point, pg.order);
        xiv = kosmann_vertical(pg.fields, pg.geom, a.xi, a.dxi);
        for (int p = 0; p < 6; ++p) xiv[p] = xiv[p] + aut.kosmann_offset[p];
    } else {
        for (int p = 0; p < 6; ++p)
            xiv[p] = eval_jet(aut.xi_v[p], pg.point, pg.order, {});
    }
    return xiv;
}

Mat4<Jet> lie_derivative_tetrad(const InfinitesimalAutomorphism& aut, const PointGeometry& pg) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the tetrad Lie derivative");
    AutJets a = aut_jets_at(aut, {}, pg.point, pg.order);
    std::array<Jet, 6> xiv = vertical_components(aut, pg);
    std::array<Jet, 6> tot = total_lift_param(pg.fields, xiv, a.xi);
    return lie_tetrad(pg.fields, tot, a.xi, a.dxi);
}

std::array<std::array<Jet, 4>, 6> lie_derivative_connection(const InfinitesimalAutomorphism& aut,
                                                            const PointGeometry& pg) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the connection Lie derivative");
    AutJets a = aut_jets_at(aut, {}, pg.point, pg.order);
    std::array<Jet, 6> xiv = vertical_components(aut, pg);
    std::array<Jet, 6> tot = total_lift_param(pg.fields, xiv, a.xi);
    auto base = lie_connection_base(pg.fields, tot, a.xi, a.dxi);
    std::array<std::array<Jet, 4>, 6> out;
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu)
            out[p][mu] = base[p][mu].truncate(pg.order - 1) + xiv[p].derivative(mu);
    return out;
}

CVec4<Jet> lie_derivative_spinor(const InfinitesimalAutomorphism& aut, const PointGeometry& pg,
                                 const GammaRep& g) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the spinor Lie derivative");
    AutJets a = aut_jets_at(aut, {}, pg.point, pg.order);
    std::array<Jet, 6> xiv = vertical_components(aut, pg);
    std::array<Jet, 6> tot = total_lift_param(pg.fields, xiv, a.xi);
    return lie_spinor(pg.fields, tot, a.xi, g);
}

VerticalRelationReport vertical_part_relation_check(const InfinitesimalAutomorphism& aut,
                                                    const FieldConfig& cfg,
                                                    const std::array<double, 4>& point) {
    PointGeometry pg = evaluate_geometry(cfg, point, 2);
    const Jet zero = pg.geom.det * 0.0;
    AutJets a = aut_jets_at(aut, cfg.consts, point, pg.order);

    // path 1: the tape-based slot functions along the section
    FieldSystem sys = ec_field_system(cfg);
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);
    std::vector<Jet> xiv_tape = eval_vertical_jets(lift, sys, point, 1);

    // path 2: minus the Lie derivatives from the direct kernels
    Mat4<Jet> lt = lie_derivative_tetrad(aut, pg);
    auto lo = lie_derivative_connection(aut, pg);
    CVec4<Jet> lp = lie_derivative_spinor(aut, pg, gam());

    VerticalRelationReport rep;
    for (int a_ = 0; a_ < 4; ++a_)
        for (int mu = 0; mu < 4; ++mu)
            rep.theta_residual =
                std::max(rep.theta_residual,
                         std::abs(xiv_tape[EcIndex::theta(a_, mu)].value() + lt[a_][mu].value()));
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu)
            rep.omega_residual =
                std::max(rep.omega_residual,
                         std::abs(xiv_tape[EcIndex::omega(p, mu)].value() + lo[p][mu].value()));
    for (int i = 0; i < 4; ++i) {
        rep.psi_residual = std::max(
            rep.psi_residual,
            std::abs(xiv_tape[EcIndex::psi(i, 0)].value() + lp[i].re.value()));
        rep.psi_residual = std::max(
            rep.psi_residual,
            std::abs(xiv_tape[EcIndex::psi(i, 1)].value() + lp[i].im.value()));
    }

    // the spinor-connection split: Xi_V = Xi_v + (omt psi) xi - (d psi) xi,
    // with Xi_v-hat = rho(Xi_v) psi assembled independently
    std::array<Jet, 6> xiv = vertical_components(aut, pg);
    CVec4<Jet> rho_v = rho_action(xiv, pg.fields.psi, zero);
    for (int i = 0; i < 4; ++i) {
        Cplx<Jet> acc = rho_v[i];
        for (int mu = 0; mu < 4; ++mu) {
            Cplx<Jet> omp(zero, zero);
            for (int j = 0; j < 4; ++j) omp = omp + pg.geom.omt[mu][i][j] * pg.fields.psi[j];
            acc = acc + (omp - pg.fields.dpsi[mu][i]) * a.xi[mu];
        }
        rep.oh_residual = std::max(
            rep.oh_residual, std::abs(acc.re.value() - xiv_tape[EcIndex::psi(i, 0)].value()));
        rep.oh_residual = std::max(
            rep.oh_residual, std::abs(acc.im.value() - xiv_tape[EcIndex::psi(i, 1)].value()));
    }
    return rep;
}

double lie_bracket_homomorphism_check(const InfinitesimalAutomorphism& a1,
                                      const InfinitesimalAutomorphism& a2,
                                      const FieldConfig& cfg,
                                      const std::array<double, 4>& point) {
    if (a1.mode != InfinitesimalAutomorphism::Mode::Explicit ||
        a2.mode != InfinitesimalAutomorphism::Mode::Explicit)
        throw EvalError("bracket check requires explicit automorphisms");

    PointGeometry pg1 = evaluate_geometry(cfg, point, 1);
    PointGeometry pg0 = evaluate_geometry(cfg, point, 0);

    auto tot_at = [&](const InfinitesimalAutomorphism& aut, const PointGeometry& pg) {
        AutJets a = aut_jets_at(aut, cfg.consts, pg.point, pg.order);
        std::array<Jet, 6> xiv = vertical_components(aut, pg);
        return total_lift_param(pg.fields, xiv, a.xi);
    };

    // pounds_i pounds_j theta at the value level: inner at order 1, outer at 0
    auto nested = [&](const InfinitesimalAutomorphism& outer,
                      const InfinitesimalAutomorphism& inner) {
        AutJets ai = aut_jets_at(inner, cfg.consts, point, 1);
        Mat4<Jet> inner_lt =
            lie_tetrad(pg1.fields, tot_at(inner, pg1), ai.xi, ai.dxi); // order 1
        EcFields<Jet> fake = pg0.fields;
        for (int a_ = 0; a_ < 4; ++a_)
            for (int mu = 0; mu < 4; ++mu) {
                fake.theta[a_][mu] = inner_lt[a_][mu].truncate(0);
                for (int nu = 0; nu < 4; ++nu)
                    fake.dtheta[nu][a_][mu] = inner_lt[a_][mu].derivative(nu);
            }
        AutJets ao = aut_jets_at(outer, cfg.consts, point, 0);
        std::array<Jet, 6> tot_o;
        {
            auto t = tot_at(outer, pg0);
            tot_o = t;
        }
        return lie_tetrad(fake, tot_o, ao.xi, ao.dxi);
    };
    Mat4<Jet> l12 = nested(a1, a2);
    Mat4<Jet> l21 = nested(a2, a1);

    // bracket automorphism: xi_12 = xi_1 d xi_2 - xi_2 d xi_1 and the
    // commutator of the total parameters
    AutJets j1 = aut_jets_at(a1, cfg.consts, point, 2);
    AutJets j2 = aut_jets_at(a2, cfg.consts, point, 2);
    std::array<Jet, 4> xi12;
    Mat4<Jet> dxi12;
    {
        std::array<Jet, 4> xi12_o1;
        for (int nu = 0; nu < 4; ++nu) {
            Jet acc = Jet::constant(0.0, 1, point);
            for (int mu = 0; mu < 4; ++mu)
                acc = acc + j1.xi[mu].truncate(1) * j2.dxi[mu][nu].truncate(1) -
                      j2.xi[mu].truncate(1) * j1.dxi[mu][nu].truncate(1);
            xi12_o1[nu] = acc;
        }
        for (int nu = 0; nu < 4; ++nu) {
            xi12[nu] = xi12_o1[nu].truncate(0);
            for (int mu = 0; mu < 4; ++mu) dxi12[mu][nu] = xi12_o1[nu].derivative(mu);
        }
    }
    std::array<Jet, 6> tot1_o1, tot2_o1;
    {
        auto t1 = tot_at(a1, pg1);
        auto t2 = tot_at(a2, pg1);
        tot1_o1 = t1;
        tot2_o1 = t2;
    }
    std::array<Jet, 6> tot12;
    {
        const Jet zero0 = Jet::constant(0.0, 0, point);
        // mixed components A^i_j = A^{ik} eta_kj on jets
        auto mixed = [&](const std::array<Jet, 6>& t, int i, int j) -> Jet {
            if (i == j) return zero0;
            int p = (i < j) ? plane_index(i, j) : plane_index(j, i);
            double s = (i < j) ? 1.0 : -1.0;
            return t[p].truncate(0) * (s * kEta[j]);
        };
        for (int p = 0; p < 6; ++p) {
            int i = kPlanes[p][0], j = kPlanes[p][1];
            Jet acc = Jet::constant(0.0, 0, point);
            for (int mu = 0; mu < 4; ++mu)
                acc = acc + j1.xi[mu].truncate(0) * tot2_o1[p].derivative(mu) -
                      j2.xi[mu].truncate(0) * tot1_o1[p].derivative(mu);
            // minus the so-commutator, raised back on the second index
            Jet comm = zero0;
            for (int k = 0; k < 4; ++k)
                comm = comm + mixed(tot1_o1, i, k) * mixed(tot2_o1, k, j) -
                       mixed(tot2_o1, i, k) * mixed(tot1_o1, k, j);
            acc = acc - comm * kEta[j];
            tot12[p] = acc;
        }
    }
    Mat4<Jet> l12bracket = lie_tetrad(pg0.fields, tot12, xi12, dxi12);

    double worst = 0.0;
    for (int a_ = 0; a_ < 4; ++a_)
        for (int mu = 0; mu < 4; ++mu)
            worst = std::max(worst, std::abs(l12[a_][mu].value() - l21[a_][mu].value() -
                                             l12bracket[a_][mu].value()));
    return worst;
}

VerticalSlotFunction record_ec_lift(const FieldConfig& cfg,
                                    const InfinitesimalAutomorphism& aut) {
    const SlotLayout L{EcIndex::kN};
    const int n_params = 20; // xi (4) + dxi (16)

    auto record_fields = [&](TapeBuilder& tb) {
        std::array<Rec, 4> x{tb.x(0), tb.x(1), tb.x(2), tb.x(3)};
        auto get = [&](int comp, int mid) { return tb.slot(L.slot(comp, mid)); };
        return std::pair{x, ec_fields_from_slots<Rec>(x, get)};
    };
    auto record_xi = [&](TapeBuilder& tb) {
        std::array<Rec, 4> xi{tb.param(0), tb.param(1), tb.param(2), tb.param(3)};
        Mat4<Rec> dxi;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) dxi[mu][nu] = tb.param(4 + mu * 4 + nu);
        return std::pair{xi, dxi};
    };
    auto record_xiv = [&](TapeBuilder& tb, const std::array<Rec, 4>& x,
                          const EcFields<Rec>& f, const EcGeom<Rec>& g,
                          const std::array<Rec, 4>& xi, const Mat4<Rec>& dxi) {
        std::array<Rec, 6> xiv;
        if (aut.mode == InfinitesimalAutomorphism::Mode::Kosmann) {
            xiv = kosmann_vertical(f, g, xi, dxi);
            for (int p = 0; p < 6; ++p)
                if (aut.kosmann_offset[p] != 0.0) xiv[p] = xiv[p] + aut.kosmann_offset[p];
        } else {
            for (int p = 0; p < 6; ++p)
                xiv[p] = aut.xi_v[p].eval_generic<Rec>(
                    x, cfg.consts, [&](double v) { return tb.constant(v); });
        }
        return xiv;
    };

    VerticalSlotFunction out;

    // base tape: Xi_V components, with the connection block's D_mu Xi_v
    // term left to the aux tape
    {
        TapeBuilder tb(L.n_slots(), n_params);
        auto [x, f] = record_fields(tb);
        static const GammaRep g0 = build_gamma();
        EcGeom<Rec> g = compute_geometry(f, g0);
        auto [xi, dxi] = record_xi(tb);
        std::array<Rec, 6> xiv = record_xiv(tb, x, f, g, xi, dxi);
        std::array<Rec, 6> tot = total_lift_param(f, xiv, xi);

        std::vector<Rec> comps(EcIndex::kN, tb.constant(0.0));
        Mat4<Rec> lt = lie_tetrad(f, tot, xi, dxi);
        for (int a_ = 0; a_ < 4; ++a_)
            for (int mu = 0; mu < 4; ++mu) comps[EcIndex::theta(a_, mu)] = -lt[a_][mu];
        auto lob = lie_connection_base(f, tot, xi, dxi);
        for (int p = 0; p < 6; ++p)
            for (int mu = 0; mu < 4; ++mu) comps[EcIndex::omega(p, mu)] = -lob[p][mu];
        CVec4<Rec> lp = lie_spinor(f, tot, xi, g0);
        for (int i = 0; i < 4; ++i) {
            comps[EcIndex::psi(i, 0)] = -lp[i].re;
            comps[EcIndex::psi(i, 1)] = -lp[i].im;
        }
        for (const Rec& r : comps) tb.mark_output(r);
        out.base = tb.finish();
    }
    // aux tape: the six Xi_v components
    {
        TapeBuilder tb(L.n_slots(), n_params);
        auto [x, f] = record_fields(tb);
        static const GammaRep g0 = build_gamma();
        EcGeom<Rec> g = compute_geometry(f, g0);
        auto [xi, dxi] = record_xi(tb);
        std::array<Rec, 6> xiv = record_xiv(tb, x, f, g, xi, dxi);
        for (const Rec& r : xiv) tb.mark_output(r);
        out.aux = tb.finish();
    }
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu)
            out.d_terms.push_back({EcIndex::omega(p, mu), p, mu, -1.0});

    std::array<Expr, 4> xi_exprs = aut.xi;
    ConstMap consts = cfg.consts;
    out.make_params = [xi_exprs, consts](const std::array<double, 4>& point, int order) {
        std::vector<Jet> params;
        params.reserve(20);
        std::array<Jet, 4> vals;
        Mat4<Jet> dvals;
        for (int mu = 0; mu < 4; ++mu) {
            Jet full = eval_jet(xi_exprs[mu], point, order + 1, consts);
            vals[mu] = full.truncate(order);
            for (int nu = 0; nu < 4; ++nu) dvals[nu][mu] = full.derivative(nu);
        }
        for (int mu = 0; mu < 4; ++mu) params.push_back(vals[mu]);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) params.push_back(dvals[mu][nu]);
        return params;
    };
    return out;
}

} // namespace gnvar
