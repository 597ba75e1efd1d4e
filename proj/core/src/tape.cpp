#include "gnvar/tape.hpp"

namespace gnvar {

std::vector<bool> Tape::active_slots(int output_register) const {
    std::vector<bool> needed(ops.size(), false);
    needed[output_register] = true;
    for (int k = static_cast<int>(ops.size()) - 1; k >= 0; --k) {
        if (!needed[k]) continue;
        const Op& op = ops[k];
        if (op.a >= 0 && op.code != OpCode::InputX && op.code != OpCode::InputSlot)
            needed[op.a] = true;
        if (op.b >= 0) needed[op.b] = true;
    }
    std::vector<bool> act(n_slots, false);
    for (int s = 0; s < n_slots; ++s)
        if (slot_regs_[s] >= 0 && needed[slot_regs_[s]]) act[s] = true;
    return act;
}

std::vector<bool> Tape::referenced_slots() const {
    std::vector<bool> ref(n_slots, false);
    for (int s = 0; s < n_slots; ++s)
        if (slot_regs_[s] >= 0) ref[s] = true;
    return ref;
}

TapeBuilder::TapeBuilder(int n_slots, int n_params) {
    tape_.n_slots = n_slots;
    tape_.n_params = n_params;
    tape_.slot_regs_.assign(n_slots, -1);
    tape_.param_regs_.assign(n_params, -1);
}

std::int32_t TapeBuilder::emit(Tape::Op op) {
    tape_.ops.push_back(op);
    return static_cast<std::int32_t>(tape_.ops.size()) - 1;
}

Rec TapeBuilder::x(int mu) {
    if (tape_.x_regs_[mu] < 0)
        tape_.x_regs_[mu] = emit({Tape::OpCode::InputX, mu, -1, 0.0, 0});
    return {tape_.x_regs_[mu], this};
}

Rec TapeBuilder::slot(int k) {
    if (tape_.slot_regs_[k] < 0)
        tape_.slot_regs_[k] = emit({Tape::OpCode::InputSlot, k, -1, 0.0, 0});
    return {tape_.slot_regs_[k], this};
}

Rec TapeBuilder::param(int k) {
    if (tape_.param_regs_[k] < 0)
        tape_.param_regs_[k] = emit({Tape::OpCode::InputParam, k, -1, 0.0, 0});
    return {tape_.param_regs_[k], this};
}

Rec TapeBuilder::constant(double v) {
    auto it = const_cache_.find(v);
    if (it != const_cache_.end()) return {it->second, this};
    std::int32_t reg = emit({Tape::OpCode::Const, -1, -1, v, 0});
    const_cache_[v] = reg;
    return {reg, this};
}

int TapeBuilder::mark_output(const Rec& r) {
    tape_.outputs.push_back(r.reg);
    return static_cast<int>(tape_.outputs.size()) - 1;
}

Tape TapeBuilder::finish() {
    finished_ = true;
    return std::move(tape_);
}

namespace {
Rec binary(Tape::OpCode code, const Rec& a, const Rec& b) {
    return {a.tb->emit({code, a.reg, b.reg, 0.0, 0}), a.tb};
}
Rec unary(Tape::OpCode code, const Rec& a, int exponent = 0) {
    return {a.tb->emit({code, a.reg, -1, 0.0, exponent}), a.tb};
}
} // namespace

Rec operator+(const Rec& a, const Rec& b) { return binary(Tape::OpCode::Add, a, b); }
Rec operator-(const Rec& a, const Rec& b) { return binary(Tape::OpCode::Sub, a, b); }
Rec operator*(const Rec& a, const Rec& b) { return binary(Tape::OpCode::Mul, a, b); }
Rec operator/(const Rec& a, const Rec& b) { return binary(Tape::OpCode::Div, a, b); }
Rec operator-(const Rec& a) { return unary(Tape::OpCode::Neg, a); }

Rec operator+(const Rec& a, double s) { return a + a.tb->constant(s); }
Rec operator+(double s, const Rec& a) { return a.tb->constant(s) + a; }
Rec operator-(const Rec& a, double s) { return a - a.tb->constant(s); }
Rec operator-(double s, const Rec& a) { return a.tb->constant(s) - a; }
Rec operator*(const Rec& a, double s) { return a * a.tb->constant(s); }
Rec operator*(double s, const Rec& a) { return a.tb->constant(s) * a; }
Rec operator/(const Rec& a, double s) { return a / a.tb->constant(s); }
Rec operator/(double s, const Rec& a) { return a.tb->constant(s) / a; }

Rec sin(const Rec& a) { return unary(Tape::OpCode::Sin, a); }
Rec cos(const Rec& a) { return unary(Tape::OpCode::Cos, a); }
Rec exp(const Rec& a) { return unary(Tape::OpCode::Exp, a); }
Rec powi(const Rec& a, int n) { return unary(Tape::OpCode::PowI, a, n); }

} // namespace gnvar
