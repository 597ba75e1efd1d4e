#pragma once

#include <complex>

namespace gnvar {

// Complex carrier over a generic scalar ring. std::complex is only
// specified for floating-point types, so spinor arithmetic over jets,
// duals and recording scalars goes through this minimal pair instead.
template <class S>
struct Cplx {
    S re, im;

    Cplx() = default;
    Cplx(const S& r, const S& i) : re(r), im(i) {}
    explicit Cplx(const S& r) : re(r), im(r * 0.0) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx conj() const { return {re, -im}; }
    Cplx times_i() const { return {-im, re}; } // multiplication by i

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    friend Cplx operator*(const Cplx& a, const S& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator*(const S& s, const Cplx& a) { return a * s; }
    friend Cplx operator*(const Cplx& a, double s) { return {a.re * s, a.im * s}; }
    friend Cplx operator*(double s, const Cplx& a) { return a * s; }

    // scale by a complex double constant (gamma-matrix entries)
    friend Cplx operator*(const Cplx& a, const std::complex<double>& c) {
        return {a.re * c.real() - a.im * c.imag(), a.re * c.imag() + a.im * c.real()};
    }
    friend Cplx operator*(const std::complex<double>& c, const Cplx& a) { return a * c; }
};

} // namespace gnvar
