#include "gnvar/clifford.hpp"

#include "gnvar/error.hpp"

#include <cmath>

namespace gnvar {

Mat4c mat_mul(const Mat4c& a, const Mat4c& b) {
    Mat4c r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const std::complex<double> aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

Mat4c mat_add(const Mat4c& a, const Mat4c& b) {
    Mat4c r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

Mat4c mat_sub(const Mat4c& a, const Mat4c& b) {
    Mat4c r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

Mat4c mat_scale(const Mat4c& a, std::complex<double> s) {
    Mat4c r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] * s;
    return r;
}

Mat4c mat_dagger(const Mat4c& a) {
    Mat4c r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = std::conj(a[j][i]);
    return r;
}

Mat4c commutator(const Mat4c& a, const Mat4c& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

Mat4c anticommutator(const Mat4c& a, const Mat4c& b) {
    return mat_add(mat_mul(a, b), mat_mul(b, a));
}

std::complex<double> mat_trace(const Mat4c& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

double mat_max_abs(const Mat4c& a) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j]));
    return m;
}

SoElement so_bracket(const SoElement& a, const SoElement& b) {
    // mixed components M^a_b = M^{ac} eta_cb
    double am[4][4], bm[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            am[i][j] = a(i, j) * kEta[j];
            bm[i][j] = b(i, j) * kEta[j];
        }
    SoElement r;
    for (int p = 0; p < 6; ++p) {
        int i = kPlanes[p][0], j = kPlanes[p][1];
        double cij = 0.0;
        for (int k = 0; k < 4; ++k) cij += am[i][k] * bm[k][j] - bm[i][k] * am[k][j];
        // raise the second index back: C^{ij} = C^i_k eta^{kj}
        r.comp[p] = cij * kEta[j];
    }
    return r;
}

GammaRep build_gamma() {
    const std::complex<double> I(0.0, 1.0);
    GammaRep g;
    for (auto& m : g.gamma) m = Mat4c{};

    // gamma^0 = diag(1,1,-1,-1)
    g.gamma[0][0][0] = 1;
    g.gamma[0][1][1] = 1;
    g.gamma[0][2][2] = -1;
    g.gamma[0][3][3] = -1;

    // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
    // sigma_1
    g.gamma[1][0][3] = 1;
    g.gamma[1][1][2] = 1;
    g.gamma[1][2][1] = -1;
    g.gamma[1][3][0] = -1;
    // sigma_2
    g.gamma[2][0][3] = -I;
    g.gamma[2][1][2] = I;
    g.gamma[2][2][1] = I;
    g.gamma[2][3][0] = -I;
    // sigma_3
    g.gamma[3][0][2] = 1;
    g.gamma[3][1][3] = -1;
    g.gamma[3][2][0] = -1;
    g.gamma[3][3][1] = 1;

    for (int p = 0; p < 6; ++p) {
        int a = kPlanes[p][0], b = kPlanes[p][1];
        Mat4c ga = mat_scale(g.gamma[a], kEta[a]); // lowered
        Mat4c gb = mat_scale(g.gamma[b], kEta[b]);
        g.gamma_ab[p] = mat_scale(commutator(ga, gb), -0.5);
    }
    return g;
}

const Mat4c& GammaRep::plane(int a, int b) const {
    int p = plane_index(a, b);
    if (p < 0 || a > b) throw EvalError("gamma plane requires a < b");
    return gamma_ab[p];
}

Mat4c so_to_spin(const SoElement& a, const GammaRep& g) {
    Mat4c r{};
    for (int p = 0; p < 6; ++p) {
        // sum over both (a,b) and (b,a) doubles each plane
        double c = -0.25 * 2.0 * a.comp[p];
        r = mat_add(r, mat_scale(g.gamma_ab[p], c));
    }
    return r;
}

Vec4c dirac_adjoint(const Vec4c& psi, const GammaRep& g) {
    Vec4c r{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) r[j] += std::conj(psi[i]) * g.gamma[0][i][j];
    return r;
}

} // namespace gnvar
