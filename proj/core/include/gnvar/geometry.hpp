#pragma once

#include "gnvar/expr.hpp"
#include "gnvar/jet.hpp"
#include "gnvar/kernels.hpp"

namespace gnvar {

// Analytically specified field configuration on a single chart.
//
// Storage order (also the scenario file order):
//   theta[a*4 + mu]           16 expressions theta^a_mu
//   omega[p*4 + mu]           24 expressions omega^{ab}_mu, p over kPlanes
//   psi[2*i + c]              8 expressions, c = 0 real / 1 imaginary part
struct FieldConfig {
    std::array<Expr, 16> theta;
    std::array<Expr, 24> omega;
    std::array<Expr, 8> psi;
    double k = 1.0;
    double alpha = 1.0;
    double m = 1.0;
    ConstMap consts;
    int order = 2;

    static FieldConfig flat_vacuum();
};

// All geometric objects at one chart point, as jets of one common order.
// Derivative entries of the inputs are exact (taken from one-order-higher
// expression jets), so no field here loses an order.
struct PointGeometry {
    std::array<double, 4> point;
    int order = 0;
    EcFields<Jet> fields;
    EcGeom<Jet> geom;

    const Jet& det() const { return geom.det; }
};

// Jets of every field (and its first derivatives) at `point`, order t.
EcFields<Jet> make_jet_fields(const FieldConfig& cfg, const std::array<double, 4>& point, int t);

// Tetrad inverse by jet-level Gauss elimination with value-level pivoting.
// Returns e with e[a][mu] = e_a^mu. Throws on a singular tetrad.
Mat4<Jet> tetrad_inverse_gauss(const Mat4<Jet>& theta);

PointGeometry evaluate_geometry(const FieldConfig& cfg, const std::array<double, 4>& point,
                                int order_override = -1);

// nabla_a psi = e_a^mu (d_mu psi + omt_mu psi), per internal direction a.
std::array<CVec4<Jet>, 4> covariant_derivative_spinor(const PointGeometry& pg,
                                                      const GammaRep& gam);

struct VolumeForms {
    Jet eps;                               // scalar density det theta
    std::array<std::array<Jet, 4>, 4> eps3; // [a][mu] dual vector of eps_a
    std::array<std::array<Jet, 6>, 6> eps2; // [pAB][pRS]
};
VolumeForms volume_forms(const PointGeometry& pg);

// Dual bivector of a 2-form: Ftil^{mu nu} = 1/2 eps^{mu nu rho sig} F_{rho sig}.
template <class S>
Mat4<S> two_form_dual(const std::array<S, 6>& comps, const S& zero) {
    Mat4<S> til;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) {
                til[mu][nu] = zero;
                continue;
            }
            int p = (mu < nu) ? plane_index(mu, nu) : plane_index(nu, mu);
            auto c = plane_complement(p);
            double s = levi_civita(mu, nu, c[0], c[1]);
            // comps indexed by the (rho<sig) pair of the complement
            int q = plane_index(c[0], c[1]);
            til[mu][nu] = comps[q] * s;
        }
    return til;
}

// Covariant exterior derivative of the eps_ab family:
//   D eps_ab = d eps_ab - omega^c_a ^ eps_cb - omega^c_b ^ eps_ac
// returned as the dual-vector components of each 3-form, [p][mu].
std::array<std::array<Jet, 4>, 6> covariant_exterior_derivative_eps(const PointGeometry& pg);

// Antisymmetrized internalized transposed derivative nabla~^[a xi^b],
// six components in kPlanes order.
std::array<Jet, 6> transposed_covariant_derivative(const PointGeometry& pg,
                                                   const std::array<Expr, 4>& xi);

} // namespace gnvar
