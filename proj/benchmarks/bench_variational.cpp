#include "gnvar/noether.hpp"

#include <benchmark/benchmark.h>

using namespace gnvar;

namespace {

FieldConfig wave_config() {
    FieldConfig cfg = FieldConfig::flat_vacuum();
    cfg.consts["m"] = 1.0;
    cfg.psi[0] = parse_expression("cos(m*x0)");
    cfg.psi[1] = parse_expression("-sin(m*x0)");
    return cfg;
}

const std::array<double, 4> kP{0.3, -0.2, 0.5, 0.1};

} // namespace

static void LagrangianTapeRun(benchmark::State& state) {
    FieldConfig cfg = wave_config();
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    SlotJets sj = build_slot_jets(sys, kP, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        auto regs = tot.tape.run<Jet>(sj.x, sj.slots);
        benchmark::DoNotOptimize(regs.back());
    }
}
BENCHMARK(LagrangianTapeRun)->DenseRange(1, 3);

static void EulerLagrangePass(benchmark::State& state) {
    FieldConfig cfg = wave_config();
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    for (auto _ : state) {
        ElPass p = euler_lagrange_pass(tot, sys, kP, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(p.E.back());
    }
}
BENCHMARK(EulerLagrangePass)->DenseRange(1, 3);

static void Theorem1TwoPath(benchmark::State& state) {
    FieldConfig cfg = wave_config();
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    auto aut = InfinitesimalAutomorphism::kosmann(
        {parse_expression("1"), parse_expression("0"), parse_expression("0"),
         parse_expression("0")});
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);
    for (auto _ : state) {
        auto r = variational_lie_derivative(tot, sys, lift, aut.xi, kP);
        benchmark::DoNotOptimize(r.residual);
    }
}
BENCHMARK(Theorem1TwoPath);

static void BergmannBianchiPoint(benchmark::State& state) {
    FieldConfig cfg = wave_config();
    auto aut = InfinitesimalAutomorphism::kosmann(
        {parse_expression("1"), parse_expression("0"), parse_expression("0"),
         parse_expression("0")});
    FieldSystem sys = ec_field_system(cfg);
    Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
    VerticalSlotFunction lift = record_ec_lift(cfg, aut);
    for (auto _ : state) {
        double bb = bergmann_bianchi_check(tot, sys, lift, kP);
        benchmark::DoNotOptimize(bb);
    }
}
BENCHMARK(BergmannBianchiPoint)->Unit(benchmark::kMillisecond);

static void TapeRecording(benchmark::State& state) {
    FieldConfig cfg = wave_config();
    for (auto _ : state) {
        Lagrangian tot = record_ec_lagrangian(cfg, LagrangianKind::Total);
        benchmark::DoNotOptimize(tot.tape.size());
    }
}
BENCHMARK(TapeRecording)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
