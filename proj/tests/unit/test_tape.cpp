#include "gnvar/dual.hpp"
#include "gnvar/jet.hpp"
#include "gnvar/prng.hpp"
#include "gnvar/tape.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gnvar;

namespace {

// f(x, s0, s1) = sin(s0)*s1^2 + s0/(1+x0^2) - exp(s1)*x1
template <class S, class X>
S sample_fn(const std::array<X, 4>& x, const S& s0, const S& s1) {
    return sin(s0) * powi(s1, 2) + s0 / (x[0] * x[0] + 1.0) - exp(s1) * x[1];
}

Tape record_sample() {
    TapeBuilder tb(2);
    std::array<Rec, 4> x{tb.x(0), tb.x(1), tb.x(2), tb.x(3)};
    Rec out = sample_fn<Rec, Rec>(x, tb.slot(0), tb.slot(1));
    tb.mark_output(out);
    return tb.finish();
}

} // namespace

TEST_CASE("tape forward execution matches direct evaluation on jets") {
    Tape tape = record_sample();
    std::array<double, 4> p{0.3, -0.7, 0.1, 0.2};
    const int ord = 3;
    std::array<Jet, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = Jet::coordinate(mu, ord, p);
    std::vector<Jet> slots{sin(x[0] * x[1]) + 0.5, x[2] * x[3] - x[0]};

    auto regs = tape.run<Jet>(x, slots);
    Jet got = regs[tape.outputs[0]];
    Jet want = sample_fn<Jet, Jet>(x, slots[0], slots[1]);
    for (int i = 0; i < got.coeff_count(); ++i)
        CHECK(std::abs(got.coeff(i) - want.coeff(i)) <= 1e-14);
}

TEST_CASE("reverse sweep gradients match finite differences") {
    Tape tape = record_sample();
    std::array<double, 4> p{0.3, -0.7, 0.1, 0.2};
    std::array<Jet, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = Jet::coordinate(mu, 0, p);
    const double s0v = 0.45, s1v = -0.8;
    std::vector<Jet> slots{Jet::constant(s0v, 0, p), Jet::constant(s1v, 0, p)};

    auto regs = tape.run<Jet>(x, slots);
    auto adj = tape.adjoints<Jet>(regs, tape.outputs[0]);

    // slot gradients: vary the slot value, x frozen
    auto f_slot = [&](int which, double v) {
        double s0 = which == 0 ? v : s0v;
        double s1 = which == 1 ? v : s1v;
        return std::sin(s0) * s1 * s1 + s0 / (1 + p[0] * p[0]) - std::exp(s1) * p[1];
    };
    for (int k = 0; k < 2; ++k) {
        double h = 1e-4, v = (k == 0) ? s0v : s1v;
        double fd = (f_slot(k, v + h) - f_slot(k, v - h)) / (2 * h);
        fd = (4 * (f_slot(k, v + h / 2) - f_slot(k, v - h / 2)) / (2 * h / 2) / 4.0 * 4 - fd) / 3.0;
        CHECK(test::rel_err(adj[tape.slot_register(k)].value(), fd) <= 1e-7);
    }

    // explicit x gradients
    auto f_x = [&](const std::array<double, 4>& q) {
        return std::sin(s0v) * s1v * s1v + s0v / (1 + q[0] * q[0]) - std::exp(s1v) * q[1];
    };
    for (int mu = 0; mu < 4; ++mu) {
        double fd = test::richardson_partial(f_x, p, {mu == 0, mu == 1, mu == 2, mu == 3}, 1e-2);
        CHECK(std::abs(adj[tape.x_register(mu)].value() - fd) <= 1e-8);
    }
}

TEST_CASE("dual execution over the tape gives directional derivatives") {
    Tape tape = record_sample();
    std::array<double, 4> p{0.1, 0.4, 0, 0};
    using D = Dual<Jet>;
    std::array<D, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = D(Jet::coordinate(mu, 1, p));
    Jet one = Jet::constant(1.0, 1, p);
    Jet zero = Jet::constant(0.0, 1, p);
    // seed slot 0 with direction 1, slot 1 frozen
    std::vector<D> slots{D(Jet::constant(0.25, 1, p), one), D(Jet::constant(-0.5, 1, p), zero)};
    auto regs = tape.run<D>(x, slots);
    D out = regs[tape.outputs[0]];
    // d/ds0 [sin(s0) s1^2 + s0/(1+x0^2) - exp(s1) x1] = cos(s0) s1^2 + 1/(1+x0^2)
    double want = std::cos(0.25) * 0.25 + 1.0 / (1 + p[0] * p[0]);
    CHECK(out.d.value() == doctest::Approx(want).epsilon(1e-12));

    // nested duals: second derivative d2/ds0^2 = -sin(s0) s1^2
    using DD = Dual<Dual<Jet>>;
    std::array<DD, 4> x2;
    for (int mu = 0; mu < 4; ++mu) x2[mu] = DD(D(Jet::coordinate(mu, 1, p)));
    DD s0(D(Jet::constant(0.25, 1, p), one), D(one, zero));
    DD s1(D(Jet::constant(-0.5, 1, p)));
    auto regs2 = tape.run<DD>(x2, {s0, s1});
    double d2 = regs2[tape.outputs[0]].d.d.value();
    CHECK(d2 == doctest::Approx(-std::sin(0.25) * 0.25).epsilon(1e-12));
}

TEST_CASE("hessian column by dual-over-reverse matches finite differences") {
    Tape tape = record_sample();
    std::array<double, 4> p{0.2, 0.3, 0, 0};
    using D = Dual<Jet>;
    std::array<D, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = D(Jet::coordinate(mu, 0, p));
    Jet one = Jet::constant(1.0, 0, p);
    const double s0v = 0.9, s1v = 0.2;
    // column for slot 1
    std::vector<D> slots{D(Jet::constant(s0v, 0, p)),
                         D(Jet::constant(s1v, 0, p), one)};
    auto regs = tape.run<D>(x, slots);
    auto adj = tape.adjoints<D>(regs, tape.outputs[0]);
    double h01 = adj[tape.slot_register(0)].d.value(); // d2f/ds0 ds1
    double h11 = adj[tape.slot_register(1)].d.value(); // d2f/ds1^2
    // analytic: f = sin(s0) s1^2 + ... : d2/ds0ds1 = cos(s0)*2 s1 ; d2/ds1^2 = 2 sin(s0) - exp(s1) x1
    CHECK(h01 == doctest::Approx(std::cos(s0v) * 2 * s1v).epsilon(1e-12));
    CHECK(h11 == doctest::Approx(2 * std::sin(s0v) - std::exp(s1v) * p[1]).epsilon(1e-12));
}

TEST_CASE("activity analysis") {
    TapeBuilder tb(3);
    std::array<Rec, 4> x{tb.x(0), tb.x(1), tb.x(2), tb.x(3)};
    Rec dead = tb.slot(2) * 2.0; // referenced but not reaching the output
    (void)dead;
    Rec out = tb.slot(0) * x[0] + 3.0;
    tb.mark_output(out);
    Tape tape = tb.finish();
    auto act = tape.active_slots(tape.outputs[0]);
    CHECK(act[0]);
    CHECK_FALSE(act[1]);
    CHECK_FALSE(act[2]);
    auto ref = tape.referenced_slots();
    CHECK(ref[0]);
    CHECK_FALSE(ref[1]);
    CHECK(ref[2]);
}
