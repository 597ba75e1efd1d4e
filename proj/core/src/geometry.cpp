#include "gnvar/geometry.hpp"

#include <cmath>

namespace gnvar {

FieldConfig FieldConfig::flat_vacuum() {
    FieldConfig cfg;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            cfg.theta[a * 4 + mu] = parse_expression(a == mu ? "1" : "0");
    for (auto& e : cfg.omega) e = parse_expression("0");
    for (auto& e : cfg.psi) e = parse_expression("0");
    return cfg;
}

EcFields<Jet> make_jet_fields(const FieldConfig& cfg, const std::array<double, 4>& point,
                              int t) {
    if (t + 1 > kMaxJetOrder)
        throw EvalError("field jets of order " + std::to_string(t + 1) + " exceed the cap");
    EcFields<Jet> f;
    for (int mu = 0; mu < 4; ++mu) f.x[mu] = Jet::coordinate(mu, t, point);

    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
            Jet full = eval_jet(cfg.theta[a * 4 + mu], point, t + 1, cfg.consts);
            f.theta[a][mu] = full.truncate(t);
            for (int nu = 0; nu < 4; ++nu) f.dtheta[nu][a][mu] = full.derivative(nu);
        }
    for (int p = 0; p < 6; ++p)
        for (int mu = 0; mu < 4; ++mu) {
            Jet full = eval_jet(cfg.omega[p * 4 + mu], point, t + 1, cfg.consts);
            f.omega[p][mu] = full.truncate(t);
            for (int nu = 0; nu < 4; ++nu) f.domega[nu][p][mu] = full.derivative(nu);
        }
    for (int i = 0; i < 4; ++i) {
        Jet re = eval_jet(cfg.psi[2 * i], point, t + 1, cfg.consts);
        Jet im = eval_jet(cfg.psi[2 * i + 1], point, t + 1, cfg.consts);
        f.psi[i] = Cplx<Jet>(re.truncate(t), im.truncate(t));
        for (int mu = 0; mu < 4; ++mu)
            f.dpsi[mu][i] = Cplx<Jet>(re.derivative(mu), im.derivative(mu));
    }
    return f;
}

Mat4<Jet> tetrad_inverse_gauss(const Mat4<Jet>& theta) {
    const int t = theta[0][0].order();
    const auto& pt = theta[0][0].point();
    // augmented [M | I] over the jet ring, value-level pivoting
    std::array<std::array<Jet, 8>, 4> aug;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            aug[i][j] = theta[i][j];
            aug[i][4 + j] = Jet::constant(i == j ? 1.0 : 0.0, t, pt);
        }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(aug[r][col].value()) > std::abs(aug[pivot][col].value())) pivot = r;
        if (std::abs(aug[pivot][col].value()) < 1e-12) throw EvalError("singular tetrad");
        if (pivot != col) std::swap(aug[pivot], aug[col]);
        Jet inv_p = 1.0 / aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] = aug[col][j] * inv_p;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            Jet factor = aug[r][col];
            bool all_zero = true;
            for (double c : factor.coeffs())
                if (c != 0.0) all_zero = false;
            if (all_zero) continue;
            for (int j = 0; j < 8; ++j) aug[r][j] = aug[r][j] - factor * aug[col][j];
        }
    }
    // rows of the augmented block are M^{-1}[mu][a]; e_a^mu = M^{-1}[mu][a]
    Mat4<Jet> e;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) e[a][mu] = aug[mu][4 + a];
    return e;
}

PointGeometry evaluate_geometry(const FieldConfig& cfg, const std::array<double, 4>& point,
                                int order_override) {
    static const GammaRep gam = build_gamma();
    PointGeometry pg;
    pg.point = point;
    pg.order = (order_override >= 0) ? order_override : cfg.order;
    pg.fields = make_jet_fields(cfg, point, pg.order);

    Jet det = det4(pg.fields.theta);
    if (std::abs(det.value()) < 1e-12) throw EvalError("singular tetrad");

    pg.geom = compute_geometry(pg.fields, gam);
    // replace the adjugate inverse with the pivoted Gauss elimination and
    // rebuild the volume forms from it
    Mat4<Jet> e = tetrad_inverse_gauss(pg.fields.theta);
    pg.geom.e = e;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) pg.geom.eps3[a][mu] = pg.geom.det * e[a][mu];
    for (int pab = 0; pab < 6; ++pab) {
        int a = kPlanes[pab][0], b = kPlanes[pab][1];
        for (int prs = 0; prs < 6; ++prs) {
            int rho = kPlanes[prs][0], sig = kPlanes[prs][1];
            Jet acc = pg.geom.det * 0.0;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    int s = levi_civita(mu, nu, rho, sig);
                    if (s == 0) continue;
                    Jet term = e[a][mu] * e[b][nu];
                    acc = (s > 0) ? acc + term : acc - term;
                }
            pg.geom.eps2[pab][prs] = pg.geom.det * acc;
        }
    }
    return pg;
}

std::array<CVec4<Jet>, 4> covariant_derivative_spinor(const PointGeometry& pg,
                                                      const GammaRep& gam) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the spinor derivative");
    return spinor_derivatives(pg.fields, pg.geom, gam).nabla_psi;
}

VolumeForms volume_forms(const PointGeometry& pg) {
    return {pg.geom.det, pg.geom.eps3, pg.geom.eps2};
}

std::array<std::array<Jet, 4>, 6> covariant_exterior_derivative_eps(const PointGeometry& pg) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the exterior derivative");
    const auto& f = pg.fields;
    const auto& g = pg.geom;
    const Jet zero = g.det * 0.0;
    const Jet zero_lower = zero.truncate(pg.order - 1);

    std::array<Mat4<Jet>, 6> til;
    for (int p = 0; p < 6; ++p) {
        std::array<Jet, 6> comps;
        for (int q = 0; q < 6; ++q) comps[q] = g.eps2[p][q];
        til[p] = two_form_dual(comps, zero);
    }
    auto signed_til = [&](int i, int j, int m_, int n_) -> Jet {
        if (i == j) return zero;
        int pp = (i < j) ? plane_index(i, j) : plane_index(j, i);
        double s = (i < j) ? 1.0 : -1.0;
        return til[pp][m_][n_] * s;
    };

    std::array<std::array<Jet, 4>, 6> out;
    for (int p = 0; p < 6; ++p) {
        int a = kPlanes[p][0], b = kPlanes[p][1];
        for (int mu = 0; mu < 4; ++mu) {
            // (d eps_ab)^mu = d_alpha til^{mu alpha}
            Jet acc = zero_lower;
            for (int al = 0; al < 4; ++al) acc = acc + til[p][mu][al].derivative(al);
            for (int nu = 0; nu < 4; ++nu)
                for (int c = 0; c < 4; ++c) {
                    Jet om_ca = f.om(c, a, nu) * kEta[a]; // omega^c_{a nu}
                    Jet om_cb = f.om(c, b, nu) * kEta[b];
                    acc = acc - (om_ca * signed_til(c, b, mu, nu)).truncate(pg.order - 1) -
                          (om_cb * signed_til(a, c, mu, nu)).truncate(pg.order - 1);
                }
            out[p][mu] = acc;
        }
    }
    return out;
}

std::array<Jet, 6> transposed_covariant_derivative(const PointGeometry& pg,
                                                   const std::array<Expr, 4>& xi) {
    if (pg.order < 1) throw EvalError("insufficient jet order for the transposed derivative");
    std::array<Jet, 4> xiv;
    Mat4<Jet> dxi;
    for (int mu = 0; mu < 4; ++mu) {
        Jet full = eval_jet(xi[mu], pg.point, pg.order + 1, {});
        xiv[mu] = full.truncate(pg.order);
        for (int nu = 0; nu < 4; ++nu) dxi[nu][mu] = full.derivative(nu);
    }
    return transposed_derivative_antisym(pg.fields, pg.geom, xiv, dxi);
}

} // namespace gnvar
