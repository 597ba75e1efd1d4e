#pragma once

#include "gnvar/geometry.hpp"

namespace gnvar {

struct LagrangianDensity {
    enum class Tag { EinsteinCartan, Dirac, Total };

    Jet value;                  // coefficient of dx0^..^dx3 as a jet
    Tag tag = Tag::Total;
    double imag_residual = 0.0; // |Im| of the Dirac bracket, diagnostics
    int field_order = 1;        // jet order of the fields consumed
};

LagrangianDensity lambda_EC(const PointGeometry& pg, double k);
LagrangianDensity lambda_D(const PointGeometry& pg, const GammaRep& gam, double alpha,
                           double m);
// Fixed summation order: Einstein-Cartan first, then Dirac.
LagrangianDensity lambda_total(const PointGeometry& pg, const GammaRep& gam, double k,
                               double alpha, double m);

} // namespace gnvar
