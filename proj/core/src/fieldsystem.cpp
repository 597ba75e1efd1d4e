#include "gnvar/fieldsystem.hpp"

namespace gnvar {

namespace {

// D_alpha of an order-(t + |alpha|max) jet, truncated to t
Jet slot_derivative(const Jet& full, const MultiIndex& a, int t) {
    Jet j = full;
    for (int mu = 0; mu < 4; ++mu)
        for (int rep = 0; rep < a[mu]; ++rep) j = j.derivative(mu);
    return j.truncate(t);
}

} // namespace

SlotJets build_slot_jets(const FieldSystem& sys, const std::array<double, 4>& point,
                         int exec_order, int max_slot_order) {
    const auto& table = MultiIndexTable::instance();
    SlotJets sj;
    sj.point = point;
    sj.order = exec_order;
    for (int mu = 0; mu < 4; ++mu) sj.x[mu] = Jet::coordinate(mu, exec_order, point);
    const SlotLayout L = sys.layout();
    sj.slots.resize(L.n_slots(), Jet::constant(0.0, exec_order, point));
    for (int i = 0; i < sys.n(); ++i) {
        Jet full = eval_jet(sys.section[i], point, exec_order + max_slot_order, sys.consts);
        for (int mid = 0; mid < SlotLayout::kPerComp; ++mid) {
            const MultiIndex& a = table.mi(mid);
            if (mi_order(a) > max_slot_order) continue;
            sj.slots[L.slot(i, mid)] = slot_derivative(full, a, exec_order);
        }
    }
    return sj;
}

std::vector<Jet> build_direction_jets(const FieldSystem& sys, const std::vector<Expr>& eta,
                                      const std::array<double, 4>& point, int exec_order,
                                      int max_slot_order) {
    if (static_cast<int>(eta.size()) != sys.n())
        throw EvalError("perturbation component count mismatch");
    const auto& table = MultiIndexTable::instance();
    const SlotLayout L = sys.layout();
    std::vector<Jet> dots(L.n_slots(), Jet::constant(0.0, exec_order, point));
    for (int i = 0; i < sys.n(); ++i) {
        Jet full = eval_jet(eta[i], point, exec_order + max_slot_order, sys.consts);
        for (int mid = 0; mid < SlotLayout::kPerComp; ++mid) {
            const MultiIndex& a = table.mi(mid);
            if (mi_order(a) > max_slot_order) continue;
            dots[L.slot(i, mid)] = slot_derivative(full, a, exec_order);
        }
    }
    return dots;
}

FieldSystem ec_field_system(const FieldConfig& cfg) {
    FieldSystem sys;
    sys.consts = cfg.consts;
    sys.section.resize(EcIndex::kN);
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) sys.section[EcIndex::theta(a, mu)] = cfg.theta[a * 4 + mu];
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu) sys.section[EcIndex::omega(p, mu)] = cfg.omega[p * 4 + mu];
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 2; ++c) sys.section[EcIndex::psi(i, c)] = cfg.psi[2 * i + c];
    return sys;
}

Lagrangian record_ec_lagrangian(const FieldConfig& cfg, LagrangianKind kind) {
    static const GammaRep gam = build_gamma();
    const SlotLayout L{EcIndex::kN};
    TapeBuilder tb(L.n_slots());
    std::array<Rec, 4> x{tb.x(0), tb.x(1), tb.x(2), tb.x(3)};
    auto get = [&](int comp, int mid) { return tb.slot(L.slot(comp, mid)); };
    EcFields<Rec> f = ec_fields_from_slots<Rec>(x, get);
    EcGeom<Rec> g = compute_geometry(f, gam);

    Rec out = tb.constant(0.0);
    if (kind == LagrangianKind::EinsteinCartan || kind == LagrangianKind::Total)
        out = out + lambda_ec_density(f, g, cfg.k);
    if (kind == LagrangianKind::Dirac || kind == LagrangianKind::Total)
        out = out + lambda_dirac_density(f, g, gam, cfg.alpha, cfg.m);
    tb.mark_output(out);

    Lagrangian lag;
    lag.tape = tb.finish();
    lag.max_slot_order = 1;
    return lag;
}

FieldSystem psi_field_system(const FieldConfig& cfg) {
    FieldSystem sys;
    sys.consts = cfg.consts;
    sys.section.assign(cfg.psi.begin(), cfg.psi.end());
    return sys;
}

Lagrangian record_psi_dirac_lagrangian(const FieldConfig& cfg) {
    static const GammaRep gam = build_gamma();
    const SlotLayout L{8};
    // frozen background enters as parameters, computed once per point:
    //   det (1), e_a^mu (16), spinor connection re/im (64 + 64)
    const int kDet = 0, kE = 1, kOmtRe = 17, kOmtIm = 81, kNParams = 145;

    TapeBuilder tb(L.n_slots(), kNParams);
    EcFields<Rec> f; // only psi and dpsi are used below
    f.x = {tb.x(0), tb.x(1), tb.x(2), tb.x(3)};
    for (int i = 0; i < 4; ++i) {
        f.psi[i] = Cplx<Rec>(tb.slot(L.value_slot(2 * i)), tb.slot(L.value_slot(2 * i + 1)));
        for (int mu = 0; mu < 4; ++mu)
            f.dpsi[mu][i] = Cplx<Rec>(tb.slot(L.deriv_slot(2 * i, mu)),
                                      tb.slot(L.deriv_slot(2 * i + 1, mu)));
    }
    EcGeom<Rec> g;
    g.det = tb.param(kDet);
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) g.e[a][mu] = tb.param(kE + a * 4 + mu);
    for (int mu = 0; mu < 4; ++mu)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                g.omt[mu][i][j] = Cplx<Rec>(tb.param(kOmtRe + mu * 16 + i * 4 + j),
                                            tb.param(kOmtIm + mu * 16 + i * 4 + j));

    tb.mark_output(lambda_dirac_density(f, g, gam, cfg.alpha, cfg.m));
    Lagrangian lag;
    lag.tape = tb.finish();
    lag.max_slot_order = 1;
    FieldConfig cfg_copy = cfg;
    lag.make_params = [cfg_copy](const std::array<double, 4>& point, int order) {
        PointGeometry pg = evaluate_geometry(cfg_copy, point, order);
        std::vector<Jet> params;
        params.reserve(kNParams);
        params.push_back(pg.geom.det);
        for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu) params.push_back(pg.geom.e[a][mu]);
        for (int mu = 0; mu < 4; ++mu)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) params.push_back(pg.geom.omt[mu][i][j].re);
        for (int mu = 0; mu < 4; ++mu)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) params.push_back(pg.geom.omt[mu][i][j].im);
        return params;
    };
    return lag;
}

} // namespace gnvar
