#pragma once

#include "gnvar/error.hpp"
#include "gnvar/jet.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gnvar {

using ConstMap = std::map<std::string, double>;

// Integer power by binary exponentiation; negative exponents go through the
// reciprocal. Matches the jet-level powi semantics on the value channel.
inline double powi(double a, int n) {
    double r = 1.0, base = a;
    if (n < 0) {
        base = 1.0 / a;
        n = -n;
    }
    while (n > 0) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

// Closed-form field definition. Nodes are stored in evaluation order
// (children always precede parents), so evaluation is a single linear pass
// over a value buffer -- the same walk serves doubles, jets and recording
// scalars.
class Expr {
public:
    enum class Op {
        Const,      // value
        Var,        // var in 0..3
        NamedConst, // name, resolved against a ConstMap at evaluation
        Neg,
        Add,
        Sub,
        Mul,
        Div,
        PowInt, // a ^ exponent, integer exponent
        Sin,
        Cos,
        Exp,
    };

    struct Node {
        Op op;
        double value = 0.0;
        int var = -1;
        int a = -1, b = -1;
        int exponent = 0;
        std::string name;
    };

    std::vector<Node> nodes;
    std::string source;

    bool empty() const { return nodes.empty(); }

    // All named constants referenced by the expression.
    std::vector<std::string> constant_names() const;

    // Generic evaluation. S needs +,-,*,/, unary -, sin, cos, exp, powi and
    // construction from double via make_const.
    template <class S, class MakeConst>
    S eval_generic(const std::array<S, 4>& x, const ConstMap& consts,
                   const MakeConst& make_const) const {
        using std::cos;
        using std::exp;
        using std::sin;
        std::vector<S> vals;
        vals.reserve(nodes.size());
        for (const Node& n : nodes) {
            switch (n.op) {
                case Op::Const: vals.push_back(make_const(n.value)); break;
                case Op::Var: vals.push_back(x[n.var]); break;
                case Op::NamedConst: {
                    auto it = consts.find(n.name);
                    if (it == consts.end()) throw EvalError("unbound constant '" + n.name + "'");
                    vals.push_back(make_const(it->second));
                    break;
                }
                case Op::Neg: vals.push_back(-vals[n.a]); break;
                case Op::Add: vals.push_back(vals[n.a] + vals[n.b]); break;
                case Op::Sub: vals.push_back(vals[n.a] - vals[n.b]); break;
                case Op::Mul: vals.push_back(vals[n.a] * vals[n.b]); break;
                case Op::Div: vals.push_back(vals[n.a] / vals[n.b]); break;
                case Op::PowInt: vals.push_back(powi(vals[n.a], n.exponent)); break;
                case Op::Sin: vals.push_back(sin(vals[n.a])); break;
                case Op::Cos: vals.push_back(cos(vals[n.a])); break;
                case Op::Exp: vals.push_back(exp(vals[n.a])); break;
            }
        }
        return vals.back();
    }

    double eval_value(const std::array<double, 4>& x, const ConstMap& consts = {}) const;
};

Expr parse_expression(std::string_view src);

// Jet of the expression at a point: coefficient at alpha is
// d^alpha e(point) / alpha!, computed by jet arithmetic over the AST.
Jet eval_jet(const Expr& e, const std::array<double, 4>& point, int order,
             const ConstMap& consts = {});

} // namespace gnvar
