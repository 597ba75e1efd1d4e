#include "gnvar/expr.hpp"
#include "gnvar/jet.hpp"
#include "gnvar/prng.hpp"

#include <benchmark/benchmark.h>

using namespace gnvar;

namespace {

Jet random_jet(SplitMix64& rng, int order) {
    Jet j = Jet::constant(0.0, order, {0, 0, 0, 0});
    for (int i = 0; i < j.coeff_count(); ++i) j.coeffs()[i] = rng.uniform(-1, 1);
    j.coeffs()[0] += 2.0; // keep the value away from zero for division
    return j;
}

} // namespace

static void JetMultiply(benchmark::State& state) {
    SplitMix64 rng(1);
    const int order = static_cast<int>(state.range(0));
    Jet a = random_jet(rng, order), b = random_jet(rng, order);
    for (auto _ : state) {
        Jet c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(JetMultiply)->DenseRange(1, 4);

static void JetDivide(benchmark::State& state) {
    SplitMix64 rng(2);
    const int order = static_cast<int>(state.range(0));
    Jet a = random_jet(rng, order), b = random_jet(rng, order);
    for (auto _ : state) {
        Jet c = a / b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(JetDivide)->DenseRange(1, 4);

static void JetSin(benchmark::State& state) {
    SplitMix64 rng(3);
    Jet a = random_jet(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Jet c = sin(a);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(JetSin)->DenseRange(1, 4);

static void ExprJetEvaluation(benchmark::State& state) {
    Expr e = parse_expression("sin(x0)*exp(0.3*x1) + x2^3/(1 + x3^2)");
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Jet j = eval_jet(e, {0.3, -0.2, 0.5, 0.1}, order);
        benchmark::DoNotOptimize(j);
    }
}
BENCHMARK(ExprJetEvaluation)->DenseRange(1, 4);
