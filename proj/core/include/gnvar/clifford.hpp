#pragma once

#include <array>
#include <complex>

namespace gnvar {

using Mat4c = std::array<std::array<std::complex<double>, 4>, 4>;
using Vec4c = std::array<std::complex<double>, 4>;

Mat4c mat_mul(const Mat4c& a, const Mat4c& b);
Mat4c mat_add(const Mat4c& a, const Mat4c& b);
Mat4c mat_sub(const Mat4c& a, const Mat4c& b);
Mat4c mat_scale(const Mat4c& a, std::complex<double> s);
Mat4c mat_dagger(const Mat4c& a);
Mat4c commutator(const Mat4c& a, const Mat4c& b);
Mat4c anticommutator(const Mat4c& a, const Mat4c& b);
std::complex<double> mat_trace(const Mat4c& a);
double mat_max_abs(const Mat4c& a);

// Minkowski signature (+,-,-,-)
inline constexpr std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

// The six independent internal planes (a<b), in lexicographic order.
// This ordering is shared with the spin-connection storage.
inline constexpr std::array<std::array<int, 2>, 6> kPlanes = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int plane_index(int a, int b) {
    static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return idx[a][b];
}

// Antisymmetric element of so(1,3), stored by its six independent upper
// components A^{ab}, a<b.
struct SoElement {
    std::array<double, 6> comp{};

    double operator()(int a, int b) const {
        if (a == b) return 0.0;
        double s = (a < b) ? 1.0 : -1.0;
        return s * comp[plane_index(a, b)];
    }
    void set(int a, int b, double v) {
        if (a < b)
            comp[plane_index(a, b)] = v;
        else
            comp[plane_index(a, b)] = -v;
    }
};

// Matrix bracket of so(1,3) elements: indices are lowered to mixed position
// with eta, commuted as matrices, and raised back.
SoElement so_bracket(const SoElement& a, const SoElement& b);

// Gamma matrices in the standard (Dirac) representation together with the
// plane matrices gamma_ab entering the spin connection.
//
// gamma_ab is normalized so that A -> -1/4 A^{ab} gamma_ab is a Lie algebra
// homomorphism so(1,3) -> spin(1,3) (the commutator test below is exact).
// Concretely gamma_ab = -1/2 [eta_ac gamma^c, eta_bd gamma^d], which for
// mixed-signature planes reduces to gamma_01 = gamma^0 gamma^1 etc.
struct GammaRep {
    std::array<Mat4c, 4> gamma; // gamma^0..gamma^3
    std::array<Mat4c, 6> gamma_ab; // per plane of kPlanes
    std::array<double, 4> eta = kEta;

    const Mat4c& plane(int a, int b) const; // gamma_ab with sign for a>b forbidden (a<b required)
};

GammaRep build_gamma();

// rho(A) = -1/4 A^{ab} gamma_ab, summed over all a,b.
Mat4c so_to_spin(const SoElement& a, const GammaRep& g);

// psi-bar = psi^dagger gamma^0
Vec4c dirac_adjoint(const Vec4c& psi, const GammaRep& g);

} // namespace gnvar
