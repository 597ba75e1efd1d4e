#include "gnvar/clifford.hpp"
#include "gnvar/prng.hpp"

#include <doctest.h>

#include <cmath>

using namespace gnvar;

namespace {
const GammaRep& rep() {
    static GammaRep g = build_gamma();
    return g;
}

SoElement random_so(SplitMix64& rng) {
    SoElement a;
    for (auto& c : a.comp) c = rng.uniform(-1, 1);
    return a;
}

Vec4c random_spinor(SplitMix64& rng) {
    Vec4c v;
    for (auto& c : v) c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return v;
}
} // namespace

TEST_CASE("Clifford relation {gamma_a, gamma_b} = 2 eta_ab") {
    const auto& g = rep();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b <= a; ++b) {
            Mat4c anti = anticommutator(g.gamma[a], g.gamma[b]);
            Mat4c want{};
            if (a == b)
                for (int i = 0; i < 4; ++i) want[i][i] = 2.0 * kEta[a];
            CHECK(mat_max_abs(mat_sub(anti, want)) <= 1e-13);
        }
}

TEST_CASE("gamma0 squared is the identity, gamma1 gamma2 anticommute") {
    const auto& g = rep();
    Mat4c sq = mat_mul(g.gamma[0], g.gamma[0]);
    Mat4c id{};
    for (int i = 0; i < 4; ++i) id[i][i] = 1.0;
    CHECK(mat_max_abs(mat_sub(sq, id)) <= 1e-15);
    CHECK(mat_max_abs(anticommutator(g.gamma[1], g.gamma[2])) <= 1e-15);
}

TEST_CASE("hermiticity pattern of the Dirac representation") {
    const auto& g = rep();
    CHECK(mat_max_abs(mat_sub(mat_dagger(g.gamma[0]), g.gamma[0])) <= 1e-15);
    for (int k = 1; k < 4; ++k)
        CHECK(mat_max_abs(mat_add(mat_dagger(g.gamma[k]), g.gamma[k])) <= 1e-15);
}

TEST_CASE("gamma_01 equals gamma^0 gamma^1") {
    const auto& g = rep();
    Mat4c prod = mat_mul(g.gamma[0], g.gamma[1]);
    CHECK(mat_max_abs(mat_sub(g.plane(0, 1), prod)) <= 1e-14);
}

TEST_CASE("gamma_ab are traceless") {
    const auto& g = rep();
    for (int p = 0; p < 6; ++p) CHECK(std::abs(mat_trace(g.gamma_ab[p])) <= 1e-14);
}

TEST_CASE("so_to_spin of zero and of a single plane") {
    const auto& g = rep();
    SoElement zero;
    CHECK(mat_max_abs(so_to_spin(zero, g)) == 0.0);

    SoElement a;
    a.set(1, 2, 1.0);
    Mat4c want = mat_scale(g.plane(1, 2), -0.5);
    CHECK(mat_max_abs(mat_sub(so_to_spin(a, g), want)) <= 1e-15);
}

TEST_CASE("so_to_spin is a Lie algebra homomorphism") {
    const auto& g = rep();
    SplitMix64 rng(2024);
    double worst = 0.0;
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        SoElement a = random_so(rng), b = random_so(rng);
        Mat4c lhs = commutator(so_to_spin(a, g), so_to_spin(b, g));
        Mat4c rhs = so_to_spin(so_bracket(a, b), g);
        worst = std::max(worst, mat_max_abs(mat_sub(lhs, rhs)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("dirac adjoint basis examples") {
    const auto& g = rep();
    Vec4c e0{1, 0, 0, 0};
    Vec4c b0 = dirac_adjoint(e0, g);
    CHECK(std::abs(b0[0] - 1.0) <= 1e-15);
    CHECK(std::abs(b0[1]) + std::abs(b0[2]) + std::abs(b0[3]) <= 1e-15);

    Vec4c e2{0, 0, 1, 0};
    Vec4c b2 = dirac_adjoint(e2, g);
    CHECK(std::abs(b2[2] + 1.0) <= 1e-15);
}

TEST_CASE("psi-bar psi and psi-bar gamma_a psi are real") {
    const auto& g = rep();
    SplitMix64 rng(5);
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        Vec4c psi = random_spinor(rng);
        Vec4c bar = dirac_adjoint(psi, g);
        std::complex<double> s{};
        for (int i = 0; i < 4; ++i) s += bar[i] * psi[i];
        CHECK(std::abs(s.imag()) <= 1e-13);
        for (int a = 0; a < 4; ++a) {
            std::complex<double> cur{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) cur += bar[i] * g.gamma[a][i][j] * psi[j];
            CHECK(std::abs(cur.imag()) <= 1e-12);
        }
    }
}
