#include "gnvar/noether.hpp"

#include <cmath>

namespace gnvar {

namespace {

// nu and (d nu)^mu as jets at the requested order
std::array<Jet, 6> nu_components(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                                 const std::array<double, 4>& point, int order) {
    PointGeometry pg = evaluate_geometry(cfg, point, order);
    std::array<Jet, 6> xiv = vertical_components(aut, pg);
    std::array<Jet, 6> nu;
    for (int q = 0; q < 6; ++q) {
        Jet acc = pg.geom.det * 0.0;
        // sum over all (a,b): each plane contributes twice
        for (int p = 0; p < 6; ++p) acc = acc + xiv[p] * pg.geom.eps2[p][q] * 2.0;
        nu[q] = acc * (-1.0 / (2.0 * cfg.k));
    }
    return nu;
}

std::array<Jet, 4> dnu_dual(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                            const std::array<double, 4>& point, int order) {
    std::array<Jet, 6> nu = nu_components(cfg, aut, point, order + 1);
    Jet zero = nu[0] * 0.0;
    Mat4<Jet> til = two_form_dual(nu, zero);
    std::array<Jet, 4> out;
    for (int mu = 0; mu < 4; ++mu) {
        Jet acc = zero.truncate(order);
        for (int al = 0; al < 4; ++al) acc = acc + til[mu][al].derivative(al);
        out[mu] = acc;
    }
    return out;
}

// second route to (d nu)^mu: antisymmetrize the 3-form components first,
// then dualize with the permutation symbol
std::array<double, 4> dnu_antisym(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                                  const std::array<double, 4>& point) {
    std::array<Jet, 6> nu = nu_components(cfg, aut, point, 1);
    auto dnu_c = [&](int a, int b, int c) -> double {
        if (b == c) return 0.0;
        int p = (b < c) ? plane_index(b, c) : plane_index(c, b);
        double s = (b < c) ? 1.0 : -1.0;
        return s * nu[p].derivative(a).value();
    };
    std::array<double, 4> out{};
    for (int mu = 0; mu < 4; ++mu) {
        double acc = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c) {
                    int s = levi_civita(mu, a, b, c);
                    if (s == 0) continue;
                    double d3 = dnu_c(a, b, c) - dnu_c(b, a, c) + dnu_c(c, a, b);
                    acc += s * d3 / 6.0;
                }
        out[mu] = acc;
    }
    return out;
}

} // namespace

FieldEquations field_equation_forms(const FieldConfig& cfg, const std::array<double, 4>& point) {
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian ec = record_ec_lagrangian(cfg, LagrangianKind::EinsteinCartan);
    Lagrangian di = record_ec_lagrangian(cfg, LagrangianKind::Dirac);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);

    std::vector<double> e_ec = euler_lagrange(ec, sys, point);
    std::vector<double> e_di = euler_lagrange(di, sys, point);
    std::vector<double> e_tot = euler_lagrange(tot, sys, point);

    PointGeometry pg = evaluate_geometry(cfg, point, 0);
    const double det = pg.det().value();

    FieldEquations out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double g_acc = 0, t_acc = 0;
            for (int mu = 0; mu < 4; ++mu) {
                double th = pg.fields.theta[a][mu].value();
                g_acc += e_ec[EcIndex::theta(b, mu)] * th;
                t_acc += e_di[EcIndex::theta(b, mu)] * th;
            }
            out.G[a][b] = cfg.k / det * g_acc;
            out.T[a][b] = -1.0 / det * t_acc;
        }
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu)
            out.omega_block[p * 4 + mu] = e_tot[EcIndex::omega(p, mu)];
    out.E_total = std::move(e_tot);
    return out;
}

NoetherCurrent noether_current(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                               const std::array<double, 4>& point) {
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    Lagrangian ec = record_ec_lagrangian(cfg, LagrangianKind::EinsteinCartan);
    Lagrangian di = record_ec_lagrangian(cfg, LagrangianKind::Dirac);
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);

    const SlotLayout L = sys.layout();
    const int t = 1;
    SlotJets sj = build_slot_jets(sys, point, t, 1);
    ElPass pass = euler_lagrange_pass(tot, sys, point, t);
    std::vector<Jet> xiv = eval_vertical_jets(lift, sys, point, t);
    AutJets a = build_aut_jets(aut.xi, cfg.consts, point, t);

    NoetherCurrent out;
    // canonical boundary current, negated so time translations carry
    // positive energy
    for (int mu = 0; mu < 4; ++mu) {
        Jet acc = a.xi[mu] * pass.L;
        for (int i = 0; i < sys.n(); ++i) acc += xiv[i] * pass.P[L.deriv_slot(i, mu)];
        out.total[mu] = -acc.value();
    }

    // Einstein and matter pieces: -xi^b E_theta(lambda_EC / lambda_D)
    std::vector<double> e_ec = euler_lagrange(ec, sys, point);
    std::vector<double> e_di = euler_lagrange(di, sys, point);
    PointGeometry pg = evaluate_geometry(cfg, point, 1);
    std::array<double, 4> xi_int{};
    for (int b = 0; b < 4; ++b) {
        double acc = 0;
        for (int nu = 0; nu < 4; ++nu)
            acc += pg.fields.theta[b][nu].value() * a.xi[nu].value();
        xi_int[b] = acc;
    }
    for (int mu = 0; mu < 4; ++mu) {
        double eacc = 0, macc = 0;
        for (int b = 0; b < 4; ++b) {
            eacc += xi_int[b] * e_ec[EcIndex::theta(b, mu)];
            macc += xi_int[b] * e_di[EcIndex::theta(b, mu)];
        }
        out.einstein[mu] = -eacc;
        out.matter[mu] = -macc;
    }

    // exact term d_H nu and the torsion-sector remainder
    std::array<Jet, 4> dnu = dnu_dual(cfg, aut, point, 0);
    for (int mu = 0; mu < 4; ++mu) {
        out.exact[mu] = dnu[mu].value();
        out.deps[mu] = out.total[mu] - out.einstein[mu] - out.matter[mu] - out.exact[mu];
    }
    double res = 0;
    for (int mu = 0; mu < 4; ++mu)
        res = std::max(res, std::abs(out.total[mu] - out.einstein[mu] - out.matter[mu] -
                                     out.deps[mu] - out.exact[mu]));
    out.breakdown_residual = res;
    return out;
}

Superpotential superpotential(const FieldConfig& cfg, const InfinitesimalAutomorphism& aut,
                              const std::array<double, 4>& point) {
    std::array<Jet, 6> nu = nu_components(cfg, aut, point, 0);
    Superpotential out;
    for (int q = 0; q < 6; ++q) out.nu[q] = nu[q].value();
    return out;
}

std::array<double, 4> superpotential_divergence(const FieldConfig& cfg,
                                                const InfinitesimalAutomorphism& aut,
                                                const std::array<double, 4>& point) {
    std::array<Jet, 4> dnu = dnu_dual(cfg, aut, point, 0);
    return {dnu[0].value(), dnu[1].value(), dnu[2].value(), dnu[3].value()};
}

ConservationReport conservation_check(const FieldConfig& cfg,
                                      const InfinitesimalAutomorphism& aut,
                                      const std::array<double, 4>& point) {
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);

    const SlotLayout L = sys.layout();
    const int t = 1;
    ElPass pass = euler_lagrange_pass(tot, sys, point, t);
    std::vector<Jet> xiv = eval_vertical_jets(lift, sys, point, t);
    AutJets a = build_aut_jets(aut.xi, cfg.consts, point, t);

    ConservationReport rep;
    std::array<Jet, 4> current;
    for (int mu = 0; mu < 4; ++mu) {
        Jet acc = a.xi[mu] * pass.L;
        for (int i = 0; i < sys.n(); ++i) acc += xiv[i] * pass.P[L.deriv_slot(i, mu)];
        current[mu] = -acc;
    }
    rep.dHJ = std::abs(horizontal_differential(current).value());

    std::array<Jet, 4> dnu1 = dnu_dual(cfg, aut, point, 1);
    rep.ddnu = std::abs(horizontal_differential(dnu1).value());

    NoetherCurrent nc = noether_current(cfg, aut, point);
    std::array<double, 4> dnu2 = dnu_antisym(cfg, aut, point);
    double cmd = 0, etp = 0;
    for (int mu = 0; mu < 4; ++mu) {
        cmd = std::max(cmd, std::abs(nc.total[mu] - dnu1[mu].value()));
        etp = std::max(etp, std::abs(nc.exact[mu] - dnu2[mu]));
    }
    rep.current_minus_dnu = cmd;
    rep.exact_two_path = etp;

    for (const Jet& e : pass.E) rep.onshell_max = std::max(rep.onshell_max, std::abs(e.value()));
    return rep;
}

IdentityReport noether_identity_point(const FieldConfig& cfg,
                                      const InfinitesimalAutomorphism& aut,
                                      const std::array<double, 4>& point) {
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);
    IdentityReport rep;
    rep.bergmann_bianchi = std::abs(bergmann_bianchi_check(tot, sys, lift, point));
    rep.naturality = std::abs(naturality_check(tot, sys, lift, aut.xi, point));
    return rep;
}

} // namespace gnvar
