// Acceptance suite: one line per criterion, [PASS]/[FAIL] with the measured
// residual and its bound. Exit status is the number of failed criteria.

#include "gnvar/noether.hpp"
#include "gnvar/prng.hpp"
#include "gnvar/report.hpp"
#include "gnvar/suites.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

using namespace gnvar;

#ifndef GNVAR_SCENARIO_DIR
#define GNVAR_SCENARIO_DIR "scenarios"
#endif

namespace {

int g_failures = 0;

void report(const char* id, bool pass, double measured, double bound, const char* detail) {
    std::printf("[%s] %-3s %-58s  measured %.3e  bound %.1e\n", pass ? "PASS" : "FAIL", id,
                detail, measured, bound);
    if (!pass) ++g_failures;
}

std::array<Expr, 4> xe(const char* a, const char* b, const char* c, const char* d) {
    return {parse_expression(a), parse_expression(b), parse_expression(c), parse_expression(d)};
}

FieldConfig random_config(SplitMix64& rng, double amp = 0.1) {
    FieldConfig cfg;
    auto poly = [&](double s) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%.6f + %.6f*x0 + %.6f*x1 + %.6f*x2*x3",
                      s * rng.uniform(-1, 1), s * rng.uniform(-1, 1), s * rng.uniform(-1, 1),
                      s * rng.uniform(-1, 1));
        return std::string(buf);
    };
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            cfg.theta[a * 4 + mu] = parse_expression(((a == mu) ? "1 + " : "0 + ") + poly(amp));
    for (int i = 0; i < 24; ++i) cfg.omega[i] = parse_expression(poly(amp));
    for (int i = 0; i < 8; ++i) cfg.psi[i] = parse_expression(poly(0.7));
    return cfg;
}

InfinitesimalAutomorphism random_explicit(SplitMix64& rng) {
    InfinitesimalAutomorphism aut;
    auto poly = [&]() {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.6f + %.6f*x0 + %.6f*x2 + %.6f*x1*x3",
                      rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1));
        return parse_expression(buf);
    };
    for (auto& e : aut.xi) e = poly();
    for (auto& e : aut.xi_v) e = poly();
    return aut;
}

std::vector<std::array<Expr, 4>> poincare_generators() {
    std::vector<std::array<Expr, 4>> gens;
    gens.push_back(xe("1", "0", "0", "0"));
    gens.push_back(xe("0", "1", "0", "0"));
    gens.push_back(xe("0", "0", "1", "0"));
    gens.push_back(xe("0", "0", "0", "1"));
    gens.push_back(xe("0", "0", "-x3", "x2"));
    gens.push_back(xe("0", "x3", "0", "-x1"));
    gens.push_back(xe("0", "-x2", "x1", "0"));
    gens.push_back(xe("x1", "x0", "0", "0"));
    gens.push_back(xe("x2", "0", "x0", "0"));
    gens.push_back(xe("x3", "0", "0", "x0"));
    return gens;
}

FieldConfig plane_wave(double lagrangian_mass = 1.0) {
    FieldConfig cfg = FieldConfig::flat_vacuum();
    cfg.m = lagrangian_mass;
    cfg.consts["m"] = 1.0;
    cfg.psi[0] = parse_expression("cos(m*x0)");
    cfg.psi[1] = parse_expression("-sin(m*x0)");
    return cfg;
}

// --------------------------------------------------------------------------

void a1_clifford() {
    const GammaRep g = build_gamma();
    double anti = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Mat4c ac = anticommutator(g.gamma[a], g.gamma[b]);
            Mat4c want{};
            if (a == b)
                for (int i = 0; i < 4; ++i) want[i][i] = 2.0 * kEta[a];
            anti = std::max(anti, mat_max_abs(mat_sub(ac, want)));
        }
    report("A1", anti <= 1e-13, anti, 1e-13, "Clifford relation, all index pairs");

    SplitMix64 rng(101);
    double hom = 0;
    for (int i = 0; i < 100; ++i) {
        SoElement a, b;
        for (auto& c : a.comp) c = rng.uniform(-1, 1);
        for (auto& c : b.comp) c = rng.uniform(-1, 1);
        Mat4c lhs = commutator(so_to_spin(a, g), so_to_spin(b, g));
        Mat4c rhs = so_to_spin(so_bracket(a, b), g);
        hom = std::max(hom, mat_max_abs(mat_sub(lhs, rhs)));
    }
    report("A1", hom <= 1e-12, hom, 1e-12, "so(1,3) -> spin(1,3) homomorphism, 100 pairs");
}

void a2_jets() {
    SplitMix64 rng(102);
    const char* exprs[] = {
        "sin(x0)*cos(x1)",      "exp(0.3*x0 + 0.2*x3)", "sin(x0*x1)",
        "1/(1 + x2^2)",         "cos(x0)^2",            "exp(sin(x3))",
        "x0*exp(-x1)",          "sin(x0 + x1 + x2)",    "cos(x0*x3)",
        "1/(2 + sin(x1))",      "exp(x0)*sin(x2)",      "x1/(1 + exp(x0))",
        "sin(cos(x0))",         "exp(0.2*x0^2)",        "cos(x1)/(2 + x2^2)",
        "sin(2*x0)*cos(3*x1)",  "exp(-x0^2/2)",         "x3*sin(x3)",
        "cos(x0 - x2)",         "exp(0.1*x0*x1)",
    };
    const auto& table = MultiIndexTable::instance();
    double worst = 0;
    for (const char* src : exprs) {
        Expr e = parse_expression(src);
        std::array<double, 4> p = rng.point_in_box({-0.8, -0.8, -0.8, -0.8}, {0.8, 0.8, 0.8, 0.8});
        Jet j = eval_jet(e, p, 3);
        auto f = [&](const std::array<double, 4>& q) { return e.eval_value(q); };
        for (int id = 0; id < table.coeff_count(3); ++id) {
            const MultiIndex& a = table.mi(id);
            double fd = test::richardson_partial(f, p, a, 5e-2);
            worst = std::max(worst, test::rel_err(j.partial(a), fd));
        }
    }
    report("A2", worst <= 1e-6, worst, 1e-6, "jets vs Richardson differences, 20 smooth exprs");

    double poly_worst = 0;
    for (int rep = 0; rep < 20; ++rep) {
        // random polynomial with exactly representable coefficients
        std::vector<std::pair<MultiIndex, double>> monos;
        std::string src;
        for (int k = 0; k < 5; ++k) {
            int id = static_cast<int>(rng.next_u64() % table.coeff_count(4));
            double c = std::round(rng.uniform(-4, 4) * 16) / 16.0;
            MultiIndex a = table.mi(id);
            monos.push_back({a, c});
            if (!src.empty()) src += " + ";
            src += std::to_string(c);
            for (int d = 0; d < 4; ++d)
                if (a[d] > 0) src += "*x" + std::to_string(d) + "^" + std::to_string(a[d]);
        }
        Expr e = parse_expression(src);
        std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
        Jet j = eval_jet(e, p, 3);
        for (int id = 0; id < j.coeff_count(); ++id) {
            const MultiIndex& b = table.mi(id);
            double want = 0;
            for (auto& [a, c] : monos) {
                double term = c;
                bool ok = true;
                for (int d = 0; d < 4; ++d) {
                    if (b[d] > a[d]) {
                        ok = false;
                        break;
                    }
                    double fall = 1;
                    for (int q = 0; q < b[d]; ++q) fall *= (a[d] - q);
                    term *= fall * std::pow(p[d], a[d] - b[d]);
                }
                if (ok) want += term;
            }
            poly_worst = std::max(poly_worst,
                                  std::abs(j.partial(b) - want) / std::max(1.0, std::abs(want)));
        }
    }
    report("A2", poly_worst <= 1e-12, poly_worst, 1e-12, "polynomial jets exact");
}

void a3_theorem1() {
    SplitMix64 rng(103);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        FieldConfig cfg = random_config(rng);
        InfinitesimalAutomorphism aut = random_explicit(rng);
        std::array<double, 4> p = rng.point_in_box({-0.3, -0.3, -0.3, -0.3}, {0.3, 0.3, 0.3, 0.3});
        FieldSystem sys = ec_field_system(cfg);
        Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
        VerticalSlotFunction lift = record_ec_lift(cfg, aut);
        worst = std::max(worst,
                         variational_lie_derivative(tot, sys, lift, aut.xi, p).residual);
    }
    report("A3", worst <= 1e-10, worst, 1e-10,
           "first Noether theorem, 50 random configs and lifts");
}

void a4_conservation() {
    FieldConfig cfg = plane_wave();
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian di = record_ec_lagrangian(cfg, LagrangianKind::Dirac);
    auto aut = InfinitesimalAutomorphism::kosmann(xe("1", "0", "0", "0"));

    SplitMix64 rng(104);
    double el_worst = 0, dhj_worst = 0;
    for (int i = 0; i < 100; ++i) {
        std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
        auto E = euler_lagrange(di, sys, p);
        for (int k = 40; k < 48; ++k) el_worst = std::max(el_worst, std::abs(E[k]));
        dhj_worst = std::max(dhj_worst, conservation_check(cfg, aut, p).dHJ);
    }
    report("A4", el_worst <= 1e-10, el_worst, 1e-10, "Dirac field equation on the plane wave");
    report("A4", dhj_worst <= 1e-8, dhj_worst, 1e-8, "current conservation at 100 seeded points");

    // negative control: mass detuned to 1.1; a second harmonic keeps the
    // energy density time-dependent so the violation reaches the divergence
    FieldConfig bad = plane_wave(1.1);
    bad.psi[0] = parse_expression("cos(m*x0) + 0.3*cos(2*m*x0)");
    bad.psi[1] = parse_expression("-sin(m*x0) - 0.3*sin(2*m*x0)");
    double neg = 0;
    for (int i = 0; i < 10; ++i) {
        std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
        neg = std::max(neg, conservation_check(bad, aut, p).dHJ);
    }
    report("A4", neg > 1e-3, neg, 1e-3, "detuned-mass negative control exceeds");
}

void a5_vertical_relation() {
    SplitMix64 rng(105);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        FieldConfig cfg = random_config(rng);
        InfinitesimalAutomorphism aut =
            (i % 3 == 0) ? InfinitesimalAutomorphism::kosmann(random_explicit(rng).xi)
                         : random_explicit(rng);
        std::array<double, 4> p = rng.point_in_box({-0.3, -0.3, -0.3, -0.3}, {0.3, 0.3, 0.3, 0.3});
        worst = std::max(worst, vertical_part_relation_check(aut, cfg, p).max_residual());
    }
    report("A5", worst <= 1e-10, worst, 1e-10,
           "vertical part equals minus the Lie derivative, 50 configs");
}

void a6_superpotential() {
    SplitMix64 rng(106);
    double two_path = 0, ddnu = 0;
    for (int i = 0; i < 20; ++i) {
        FieldConfig cfg = random_config(rng); // generic off-shell configs
        InfinitesimalAutomorphism aut = random_explicit(rng);
        std::array<double, 4> p = rng.point_in_box({-0.3, -0.3, -0.3, -0.3}, {0.3, 0.3, 0.3, 0.3});
        auto rep = conservation_check(cfg, aut, p);
        two_path = std::max(two_path, rep.exact_two_path);
        ddnu = std::max(ddnu, rep.ddnu);
    }
    report("A6", two_path <= 1e-11, two_path, 1e-11, "current exact term equals d_H nu");
    report("A6", ddnu <= 1e-11, ddnu, 1e-11, "d_H d_H nu off shell");
}

void a7_killing() {
    FieldConfig cfg = FieldConfig::flat_vacuum();
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    SplitMix64 rng(107);
    double lie_worst = 0, nat_worst = 0;
    for (const auto& xi : poincare_generators()) {
        auto aut = InfinitesimalAutomorphism::kosmann(xi);
        VerticalSlotFunction lift = record_ec_lift(cfg, aut);
        for (int i = 0; i < 3; ++i) {
            std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
            PointGeometry pg = evaluate_geometry(cfg, p);
            Mat4<Jet> lt = lie_derivative_tetrad(aut, pg);
            auto lo = lie_derivative_connection(aut, pg);
            for (int a = 0; a < 4; ++a)
                for (int mu = 0; mu < 4; ++mu)
                    lie_worst = std::max(lie_worst, std::abs(lt[a][mu].value()));
            for (int q = 0; q < 6; ++q)
                for (int mu = 0; mu < 4; ++mu)
                    lie_worst = std::max(lie_worst, std::abs(lo[q][mu].value()));
            nat_worst = std::max(
                nat_worst, std::abs(naturality_check(tot, sys, lift, aut.xi, p)));
        }
    }
    report("A7", lie_worst <= 1e-11, lie_worst, 1e-11,
           "Killing invariance of theta and omega, 10 generators");
    report("A7", nat_worst <= 1e-8, nat_worst, 1e-8, "naturality residual, 10 generators");
}

void a8_bergmann_bianchi() {
    SplitMix64 rng(108);
    FieldConfig vac = FieldConfig::flat_vacuum();
    FieldConfig pw = plane_wave();
    std::vector<std::array<Expr, 4>> xis;
    xis.push_back(xe("1", "0", "0", "0"));
    xis.push_back(xe("0", "-x2", "x1", "0"));
    xis.push_back(xe("0.3*x0^2", "x1*x2", "sin(x0)", "0.2*x3")); // generic, non-Killing

    double pos = 0;
    for (const FieldConfig* cfg : {&vac, &pw})
        for (const auto& xi : xis) {
            auto aut = InfinitesimalAutomorphism::kosmann(xi);
            std::array<double, 4> p =
                rng.point_in_box({-0.5, -0.5, -0.5, -0.5}, {0.5, 0.5, 0.5, 0.5});
            pos = std::max(pos, noether_identity_point(*cfg, aut, p).bergmann_bianchi);
        }
    report("A8", pos <= 1e-8, pos, 1e-8,
           "Bergmann-Bianchi contraction, Kosmann lifts on flat backgrounds");

    // Negative control as specified: the Kosmann lift detuned by a constant
    // +0.1 in the (1,2) vertical plane. A constant internal rotation is
    // itself an exact rigid symmetry of the theory, so the contraction
    // stays at machine zero for the perturbed lift as well; the criterion
    // is recorded honestly as unattainable (see the analysis notes).
    double neg = 0;
    for (const FieldConfig* cfg : {&vac, &pw}) {
        auto aut = InfinitesimalAutomorphism::kosmann(xis[1]);
        aut.kosmann_offset[plane_index(1, 2)] = 0.1;
        std::array<double, 4> p = rng.point_in_box({-0.5, -0.5, -0.5, -0.5}, {0.5, 0.5, 0.5, 0.5});
        neg = std::max(neg, noether_identity_point(*cfg, aut, p).bergmann_bianchi);
    }
    report("A8", neg > 1e-3, neg, 1e-3,
           "perturbed-lift negative control exceeds (known unattainable)");
}

void a9_self_adjointness() {
    Scenario sc = load_scenario(std::string(GNVAR_SCENARIO_DIR) + "/plane_wave_dirac.toml");
    Report rep = run_suites(sc, {"jacobi-selfadjoint"});
    double worst = rep.suites.at(0).max_residual;
    report("A9", worst <= 1e-6, worst, 1e-6,
           "Jacobi self-adjointness on the lattice, 10 perturbation pairs");
}

void a10_determinism() {
    Scenario sc = load_scenario(std::string(GNVAR_SCENARIO_DIR) + "/flat_vacuum.toml");
    sc.sampling.points = 8;
    auto which = sc.suites;
    std::string j1 = emit_report_json(run_suites(sc, which));
    std::string j2 = emit_report_json(run_suites(sc, which));
    bool same = (j1 == j2) && !j1.empty();
    report("A10", same, same ? 0.0 : 1.0, 0.0, "byte-identical JSON reports for equal inputs");
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    a1_clifford();
    a2_jets();
    a3_theorem1();
    a4_conservation();
    a5_vertical_relation();
    a6_superpotential();
    a7_killing();
    a8_bergmann_bianchi();
    a9_self_adjointness();
    a10_determinism();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("\n%d criterion(s) failed, %.1f s total\n", g_failures, secs);
    return g_failures;
}
