#include "gnvar/lagrangians.hpp"

#include <cmath>

namespace gnvar {

LagrangianDensity lambda_EC(const PointGeometry& pg, double k) {
    LagrangianDensity d;
    d.tag = LagrangianDensity::Tag::EinsteinCartan;
    d.value = lambda_ec_density(pg.fields, pg.geom, k);
    return d;
}

LagrangianDensity lambda_D(const PointGeometry& pg, const GammaRep& gam, double alpha,
                           double m) {
    if (pg.order < 1) throw EvalError("lambda_D needs field jets of order >= 1");
    LagrangianDensity d;
    d.tag = LagrangianDensity::Tag::Dirac;
    Cplx<Jet> full = lambda_dirac_complex(pg.fields, pg.geom, gam, alpha, m);
    d.value = full.re;
    double imag = 0.0;
    for (double c : full.im.coeffs()) imag = std::max(imag, std::abs(c));
    d.imag_residual = imag;
    return d;
}

LagrangianDensity lambda_total(const PointGeometry& pg, const GammaRep& gam, double k,
                               double alpha, double m) {
    LagrangianDensity ec = lambda_EC(pg, k);
    LagrangianDensity di = lambda_D(pg, gam, alpha, m);
    LagrangianDensity d;
    d.tag = LagrangianDensity::Tag::Total;
    d.value = ec.value + di.value;
    d.imag_residual = di.imag_residual;
    return d;
}

} // namespace gnvar
