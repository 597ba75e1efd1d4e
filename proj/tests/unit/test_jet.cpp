#include "gnvar/expr.hpp"
#include "gnvar/jet.hpp"
#include "gnvar/multiindex.hpp"
#include "gnvar/prng.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gnvar;

TEST_CASE("multiindex table enumeration") {
    const auto& t = MultiIndexTable::instance();
    CHECK(t.coeff_count(0) == 1);
    CHECK(t.coeff_count(1) == 5);
    CHECK(t.coeff_count(2) == 15);
    CHECK(t.coeff_count(3) == 35);
    CHECK(t.coeff_count(4) == 70);

    // ids 1..4 are the four first derivatives d0..d3
    CHECK(t.mi(1) == MultiIndex{1, 0, 0, 0});
    CHECK(t.mi(2) == MultiIndex{0, 1, 0, 0});
    CHECK(t.mi(3) == MultiIndex{0, 0, 1, 0});
    CHECK(t.mi(4) == MultiIndex{0, 0, 0, 1});

    // prefix property: indices of order <= s come first
    for (int s = 0; s <= kMaxJetOrder; ++s)
        for (int i = 0; i < t.coeff_count(s); ++i) CHECK(t.order_of(i) <= s);

    for (int i = 0; i < t.total(); ++i) CHECK(t.id_of(t.mi(i)) == i);
}

TEST_CASE("jet of x0^2*x1 at (2,3,0,0)") {
    Expr e = parse_expression("x0^2 * x1");
    Jet j = eval_jet(e, {2, 3, 0, 0}, 2);
    CHECK(j.value() == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(j.partial({1, 0, 0, 0}) == doctest::Approx(12.0));
    CHECK(j.partial({0, 1, 0, 0}) == doctest::Approx(4.0));
    CHECK(j.partial({2, 0, 0, 0}) == doctest::Approx(6.0));
    CHECK(j.partial({1, 1, 0, 0}) == doctest::Approx(4.0));
    CHECK(j.partial({0, 2, 0, 0}) == doctest::Approx(0.0));
    // Taylor-normalized coefficients 12, 12, 4, 3, 4, 0
    CHECK(j.coeff(MultiIndex{2, 0, 0, 0}) == doctest::Approx(3.0));
}

TEST_CASE("jet of a bare coordinate") {
    Expr e = parse_expression("x2");
    Jet j = eval_jet(e, {0.3, -1.2, 7.5, 2.0}, 1);
    CHECK(j.value() == doctest::Approx(7.5));
    CHECK(j.coeff(MultiIndex{0, 0, 1, 0}) == doctest::Approx(1.0));
    CHECK(j.coeff(MultiIndex{1, 0, 0, 0}) == doctest::Approx(0.0));
    CHECK(j.coeff(MultiIndex{0, 0, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("sin jet matches Richardson finite differences to order 3") {
    Expr e = parse_expression("sin(x0)");
    std::array<double, 4> p{0.7, 0, 0, 0};
    Jet j = eval_jet(e, p, 3);
    auto f = [&](const std::array<double, 4>& x) { return std::sin(x[0]); };
    for (int k = 0; k <= 3; ++k) {
        MultiIndex a{k, 0, 0, 0};
        double fd = test::richardson_partial(f, p, a, 1e-1);
        CHECK(test::rel_err(j.partial(a), fd) <= 1e-6);
    }
}

TEST_CASE("product rule: coordinate jet squared") {
    std::array<double, 4> p{3, 0, 0, 0};
    Jet x = Jet::coordinate(0, 2, p);
    Jet sq = x * x;
    CHECK(sq.value() == doctest::Approx(9.0));
    CHECK(sq.partial({1, 0, 0, 0}) == doctest::Approx(6.0));
    CHECK(sq.partial({2, 0, 0, 0}) == doctest::Approx(2.0));
}

TEST_CASE("multiplicative identity") {
    SplitMix64 rng(11);
    std::array<double, 4> p{0.1, 0.2, 0.3, 0.4};
    Jet one = Jet::constant(1.0, 3, p);
    Jet a(Jet::constant(0, 3, p));
    for (int i = 0; i < a.coeff_count(); ++i) a.coeffs()[i] = rng.uniform(-10, 10);
    Jet b = a * one;
    for (int i = 0; i < a.coeff_count(); ++i)
        CHECK(b.coeff(i) == doctest::Approx(a.coeff(i)).epsilon(1e-15));
}

TEST_CASE("exp(a)*exp(-a) is the constant one") {
    SplitMix64 rng(7);
    std::array<double, 4> p{0, 0, 0, 0};
    for (int rep = 0; rep < 20; ++rep) {
        Jet a = Jet::constant(0, 4, p);
        for (int i = 0; i < a.coeff_count(); ++i) a.coeffs()[i] = rng.uniform(-1, 1);
        Jet prod = exp(a) * exp(-a);
        CHECK(std::abs(prod.value() - 1.0) <= 1e-13);
        for (int i = 1; i < prod.coeff_count(); ++i) CHECK(std::abs(prod.coeff(i)) <= 1e-13);
    }
}

TEST_CASE("jet multiplication is commutative and associative") {
    SplitMix64 rng(23);
    std::array<double, 4> p{0, 0, 0, 0};
    for (int rep = 0; rep < 50; ++rep) {
        Jet a = Jet::constant(0, 3, p), b = a, c = a;
        for (int i = 0; i < a.coeff_count(); ++i) {
            a.coeffs()[i] = rng.uniform(-10, 10);
            b.coeffs()[i] = rng.uniform(-10, 10);
            c.coeffs()[i] = rng.uniform(-10, 10);
        }
        Jet ab = a * b, ba = b * a;
        Jet abc1 = (a * b) * c, abc2 = a * (b * c);
        for (int i = 0; i < ab.coeff_count(); ++i) {
            CHECK(std::abs(ab.coeff(i) - ba.coeff(i)) <= 1e-12);
            CHECK(std::abs(abc1.coeff(i) - abc2.coeff(i)) <= 1e-9); // |c|<=10^3 scale
        }
    }
}

TEST_CASE("truncation consistency across orders") {
    SplitMix64 rng(5);
    Expr e = parse_expression("sin(x0)*exp(x1) + x2^3/(1+x3^2)");
    for (int rep = 0; rep < 10; ++rep) {
        std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
        for (int s = 1; s <= 3; ++s) {
            Jet hi = eval_jet(e, p, s);
            Jet lo = eval_jet(e, p, s - 1);
            Jet tr = hi.truncate(s - 1);
            for (int i = 0; i < lo.coeff_count(); ++i)
                CHECK(std::abs(tr.coeff(i) - lo.coeff(i)) <= 1e-12);
        }
    }
}

TEST_CASE("random polynomial jets are exact") {
    // polynomial of degree <= 4 in all four variables, expanded analytically
    SplitMix64 rng(99);
    const auto& t = MultiIndexTable::instance();
    for (int rep = 0; rep < 20; ++rep) {
        // build sum of monomials c * x0^a0 x1^a1 x2^a2 x3^a3 with |a| <= 4
        std::string src;
        std::vector<std::pair<MultiIndex, double>> monos;
        for (int k = 0; k < 6; ++k) {
            int id = static_cast<int>(rng.next_u64() % t.total());
            double c = std::round(rng.uniform(-4, 4) * 8) / 8.0;
            MultiIndex a = t.mi(id);
            monos.push_back({a, c});
            if (!src.empty()) src += " + ";
            src += std::to_string(c);
            for (int d = 0; d < 4; ++d)
                if (a[d] > 0) src += " * x" + std::to_string(d) + "^" + std::to_string(a[d]);
        }
        Expr e = parse_expression(src);
        std::array<double, 4> p = rng.point_in_box({-1, -1, -1, -1}, {1, 1, 1, 1});
        Jet j = eval_jet(e, p, 3);
        // analytic partials of each monomial
        for (int id = 0; id < j.coeff_count(); ++id) {
            MultiIndex b = t.mi(id);
            double want = 0.0;
            for (auto& [a, c] : monos) {
                double term = c;
                bool ok = true;
                for (int d = 0; d < 4; ++d) {
                    if (b[d] > a[d]) {
                        ok = false;
                        break;
                    }
                    // d^b (x^a) = a!/(a-b)! x^(a-b)
                    double fall = 1.0;
                    for (int q = 0; q < b[d]; ++q) fall *= (a[d] - q);
                    term *= fall * std::pow(p[d], a[d] - b[d]);
                }
                if (ok) want += term;
            }
            CHECK(std::abs(j.partial(b) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("jet error paths") {
    std::array<double, 4> p{0, 0, 0, 0};
    Jet a = Jet::constant(1.0, 2, p);
    Jet b = Jet::constant(1.0, 3, p);
    CHECK_THROWS_AS(a + b, EvalError);
    Jet z = Jet::coordinate(0, 2, p); // value 0 at origin
    CHECK_THROWS_AS(a / z, EvalError);
    CHECK_THROWS_AS(Jet::constant(0.0, 2, p).derivative(0).derivative(0).derivative(0), EvalError);
    std::array<double, 4> q{1, 0, 0, 0};
    Jet c = Jet::constant(1.0, 2, q);
    CHECK_THROWS_AS(a * c, EvalError);
}

TEST_CASE("total derivative along sections") {
    // field y = x0^2, composite L = y: D_0 L has value 2 x0
    Expr y = parse_expression("x0^2");
    std::array<double, 4> p{1.3, 0, 0, 0};
    Jet L = eval_jet(y, p, 2);
    Jet d = total_derivative(L, 0);
    CHECK(d.value() == doctest::Approx(2 * 1.3));

    // L = x1 independent of fields: D_0 L = 0
    Jet Lx = eval_jet(parse_expression("x1"), p, 1);
    CHECK(total_derivative(Lx, 0).value() == doctest::Approx(0.0));

    // L = 1/2 y_0^2 with y = sin(x0): D_0 L = cos * (-sin), checked by FD of 1/2 cos^2
    Expr ysin = parse_expression("sin(x0)");
    Jet yj = eval_jet(ysin, p, 3);
    Jet y0 = yj.derivative(0);
    Jet L2 = y0 * y0 * 0.5;
    double got = total_derivative(L2, 0).value();
    auto f = [](const std::array<double, 4>& x) {
        double c = std::cos(x[0]);
        return 0.5 * c * c;
    };
    double fd = test::richardson_partial(f, p, {1, 0, 0, 0}, 1e-1);
    CHECK(test::rel_err(got, fd) <= 1e-6);
}
