#pragma once

#include "gnvar/multiindex.hpp"

#include <array>
#include <span>

namespace gnvar {

// Truncated multivariate Taylor expansion of a scalar field at a chart
// point, in the four coordinates x0..x3.
//
// Coefficients are Taylor-normalized: coeff(alpha) = d^alpha f / alpha!
// evaluated at the base point, so multiplication is plain truncated
// polynomial convolution. The raw partial derivative is recovered with
// partial(alpha) = coeff(alpha) * alpha!.
//
// Arithmetic requires equal orders and equal base points; mixing is an
// error, truncation is explicit via truncate().
class Jet {
public:
    Jet() = default;
    // only the live prefix of the coefficient table is copied
    Jet(const Jet& o) : order_(o.order_), count_(o.count_), point_(o.point_) {
        for (int i = 0; i < count_; ++i) c_[i] = o.c_[i];
    }
    Jet& operator=(const Jet& o) {
        order_ = o.order_;
        count_ = o.count_;
        point_ = o.point_;
        for (int i = 0; i < count_; ++i) c_[i] = o.c_[i];
        return *this;
    }

    static Jet constant(double value, int order, const std::array<double, 4>& point);
    static Jet coordinate(int mu, int order, const std::array<double, 4>& point);

    int order() const { return order_; }
    const std::array<double, 4>& point() const { return point_; }

    double value() const { return c_[0]; }
    double coeff(int id) const { return c_[id]; }
    double coeff(const MultiIndex& a) const;
    double partial(const MultiIndex& a) const; // coeff * alpha!

    int coeff_count() const { return count_; }
    std::span<const double> coeffs() const { return {c_.data(), static_cast<std::size_t>(count_)}; }
    std::span<double> coeffs() { return {c_.data(), static_cast<std::size_t>(count_)}; }

    Jet truncate(int new_order) const;
    Jet derivative(int mu) const; // order drops by one

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(Jet a, double s);
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(Jet a, double s);
    friend Jet operator*(double s, Jet a) { return a * s; }
    friend Jet operator/(Jet a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& a);

    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet exp(const Jet& a);
    friend Jet powi(const Jet& a, int n);

    // Reciprocal of a jet with nonzero value part.
    friend Jet reciprocal(const Jet& a);

private:
    Jet(int order, const std::array<double, 4>& point);

    void check_compatible(const Jet& o) const;
    // f(u) for f given by scaled derivatives d[k] = f^(k)(u0)/k!
    static Jet compose_series(const Jet& u, const std::array<double, kMaxJetOrder + 1>& d);

    // coefficients live inline: the largest table (order 4) has 70 entries,
    // and jets are created in inner loops where heap traffic dominates
    int order_ = 0;
    int count_ = 1;
    std::array<double, 4> point_{};
    std::array<double, 70> c_{};
};

// Along analytically specified sections every composite is a jet in x, so
// the total derivative D_mu of a composite is its coordinate derivative.
inline Jet total_derivative(const Jet& composite, int mu) { return composite.derivative(mu); }

} // namespace gnvar
