#pragma once

#include "gnvar/error.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace gnvar {

// A recorded straight-line program over an abstract scalar ring. Lagrangian
// and lift kernels are taped once per (system, automorphism) and then
// executed with whatever scalar the caller needs: jets for plain
// evaluation, dual jets for perturbation channels.
//
// The same recording doubles as the derivative engine: the reverse sweep
// propagates ring-valued adjoints, which is valid because every elementary
// operation's differential is multiplication in the ring (jets form a
// commutative algebra and sin/cos/exp obey the chain rule coefficientwise).
class Tape {
public:
    enum class OpCode : std::uint8_t {
        InputX,     // a = coordinate index
        InputSlot,  // a = slot index
        InputParam, // a = parameter index (slot-independent data, e.g. xi jets)
        Const,      // value
        Add,
        Sub,
        Mul,
        Div,
        Neg,
        Sin,
        Cos,
        Exp,
        PowI, // a ^ exponent
    };

    struct Op {
        OpCode code;
        std::int32_t a = -1, b = -1;
        double value = 0.0;
        int exponent = 0;
    };

    std::vector<Op> ops;
    int n_slots = 0;
    int n_params = 0;
    std::vector<int> outputs;

    std::size_t size() const { return ops.size(); }

    // Forward execution; returns the full register file.
    template <class T>
    std::vector<T> run(const std::array<T, 4>& x, const std::vector<T>& slots,
                       const std::vector<T>& params = {}) const {
        if (static_cast<int>(slots.size()) != n_slots)
            throw EvalError("tape slot count mismatch");
        if (static_cast<int>(params.size()) < n_params && !params_unused())
            throw EvalError("tape param count mismatch");
        std::vector<T> r;
        r.reserve(ops.size());
        const T zero_proto = x[0] * 0.0;
        for (const Op& op : ops) {
            switch (op.code) {
                case OpCode::InputX: r.push_back(x[op.a]); break;
                case OpCode::InputSlot: r.push_back(slots[op.a]); break;
                case OpCode::InputParam: r.push_back(params[op.a]); break;
                case OpCode::Const: r.push_back(zero_proto + op.value); break;
                case OpCode::Add: r.push_back(r[op.a] + r[op.b]); break;
                case OpCode::Sub: r.push_back(r[op.a] - r[op.b]); break;
                case OpCode::Mul: r.push_back(r[op.a] * r[op.b]); break;
                case OpCode::Div: r.push_back(r[op.a] / r[op.b]); break;
                case OpCode::Neg: r.push_back(-r[op.a]); break;
                case OpCode::Sin: r.push_back(sin(r[op.a])); break;
                case OpCode::Cos: r.push_back(cos(r[op.a])); break;
                case OpCode::Exp: r.push_back(exp(r[op.a])); break;
                case OpCode::PowI: r.push_back(powi(r[op.a], op.exponent)); break;
            }
        }
        return r;
    }

    // Reverse sweep from one output. Returns an adjoint per register;
    // callers read off the entries of InputX / InputSlot registers.
    template <class T>
    std::vector<T> adjoints(const std::vector<T>& r, int output_register) const {
        const T zero = r[0] * 0.0;
        std::vector<T> adj(ops.size(), zero);
        adj[output_register] = zero + 1.0;
        for (int k = static_cast<int>(ops.size()) - 1; k >= 0; --k) {
            const Op& op = ops[k];
            switch (op.code) {
                case OpCode::InputX:
                case OpCode::InputSlot:
                case OpCode::InputParam:
                case OpCode::Const: break;
                case OpCode::Add:
                    adj[op.a] = adj[op.a] + adj[k];
                    adj[op.b] = adj[op.b] + adj[k];
                    break;
                case OpCode::Sub:
                    adj[op.a] = adj[op.a] + adj[k];
                    adj[op.b] = adj[op.b] - adj[k];
                    break;
                case OpCode::Mul:
                    adj[op.a] = adj[op.a] + adj[k] * r[op.b];
                    adj[op.b] = adj[op.b] + adj[k] * r[op.a];
                    break;
                case OpCode::Div:
                    adj[op.a] = adj[op.a] + adj[k] / r[op.b];
                    adj[op.b] = adj[op.b] - adj[k] * r[k] / r[op.b];
                    break;
                case OpCode::Neg: adj[op.a] = adj[op.a] - adj[k]; break;
                case OpCode::Sin: adj[op.a] = adj[op.a] + adj[k] * cos(r[op.a]); break;
                case OpCode::Cos: adj[op.a] = adj[op.a] - adj[k] * sin(r[op.a]); break;
                case OpCode::Exp: adj[op.a] = adj[op.a] + adj[k] * r[k]; break;
                case OpCode::PowI:
                    if (op.exponent != 0)
                        adj[op.a] = adj[op.a] +
                                    adj[k] * powi(r[op.a], op.exponent - 1) *
                                        static_cast<double>(op.exponent);
                    break;
            }
        }
        return adj;
    }

    // Slots that can influence the given output register.
    std::vector<bool> active_slots(int output_register) const;

    // Largest slot index referenced anywhere (for order instrumentation).
    std::vector<bool> referenced_slots() const;

    int x_register(int mu) const { return x_regs_[mu]; }
    int slot_register(int k) const { return slot_regs_[k]; }
    int param_register(int k) const { return param_regs_[k]; }
    bool params_unused() const {
        for (int r : param_regs_)
            if (r >= 0) return false;
        return true;
    }

private:
    friend class TapeBuilder;
    std::array<int, 4> x_regs_{-1, -1, -1, -1};
    std::vector<int> slot_regs_;
    std::vector<int> param_regs_;
};

// Recording scalar; see TapeBuilder.
class TapeBuilder;
struct Rec {
    std::int32_t reg;
    TapeBuilder* tb;
};

class TapeBuilder {
public:
    explicit TapeBuilder(int n_slots, int n_params = 0);

    Rec x(int mu);
    Rec slot(int k);
    Rec param(int k);
    Rec constant(double v);

    int mark_output(const Rec& r);
    Tape finish();

    std::int32_t emit(Tape::Op op);

private:
    Tape tape_;
    std::map<double, std::int32_t> const_cache_;
    bool finished_ = false;
};

Rec operator+(const Rec& a, const Rec& b);
Rec operator-(const Rec& a, const Rec& b);
Rec operator*(const Rec& a, const Rec& b);
Rec operator/(const Rec& a, const Rec& b);
Rec operator-(const Rec& a);
Rec operator+(const Rec& a, double s);
Rec operator+(double s, const Rec& a);
Rec operator-(const Rec& a, double s);
Rec operator-(double s, const Rec& a);
Rec operator*(const Rec& a, double s);
Rec operator*(double s, const Rec& a);
Rec operator/(const Rec& a, double s);
Rec operator/(double s, const Rec& a);
Rec sin(const Rec& a);
Rec cos(const Rec& a);
Rec exp(const Rec& a);
Rec powi(const Rec& a, int n);

} // namespace gnvar
