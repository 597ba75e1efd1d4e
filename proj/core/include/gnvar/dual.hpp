#pragma once

namespace gnvar {

// Forward-mode perturbation channel over an arbitrary scalar ring T.
// Nesting Dual<Dual<Jet>> gives the two-level channels used for second
// variations; all rules are the usual product/quotient/chain rules.
template <class T>
struct Dual {
    T v; // value channel
    T d; // derivative channel

    Dual() = default;
    explicit Dual(const T& value) : v(value), d(value * 0.0) {}
    Dual(const T& value, const T& dot) : v(value), d(dot) {}

    Dual operator-() const { return {-v, -d}; }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.v * b.v, a.v * b.d + a.d * b.v};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }

    friend Dual operator+(const Dual& a, double s) { return {a.v + s, a.d}; }
    friend Dual operator+(double s, const Dual& a) { return {a.v + s, a.d}; }
    friend Dual operator-(const Dual& a, double s) { return {a.v - s, a.d}; }
    friend Dual operator-(double s, const Dual& a) { return {s - a.v, -a.d}; }
    friend Dual operator*(const Dual& a, double s) { return {a.v * s, a.d * s}; }
    friend Dual operator*(double s, const Dual& a) { return {a.v * s, a.d * s}; }
    friend Dual operator/(const Dual& a, double s) { return {a.v / s, a.d / s}; }
    friend Dual operator/(double s, const Dual& a) {
        T q = s / a.v;
        return {q, -(q / a.v) * a.d};
    }

    friend Dual sin(const Dual& a) { return {sin(a.v), cos(a.v) * a.d}; }
    friend Dual cos(const Dual& a) { return {cos(a.v), -(sin(a.v) * a.d)}; }
    friend Dual exp(const Dual& a) {
        T e = exp(a.v);
        return {e, e * a.d};
    }
    friend Dual powi(const Dual& a, int n) {
        if (n == 0) return {a.v * 0.0 + 1.0, a.v * 0.0};
        return {powi(a.v, n), powi(a.v, n - 1) * static_cast<double>(n) * a.d};
    }
};

} // namespace gnvar
