#include "gnvar/jet.hpp"

#include "gnvar/error.hpp"

#include <algorithm>
#include <cmath>

namespace gnvar {

namespace {
const MultiIndexTable& table() { return MultiIndexTable::instance(); }
} // namespace

Jet::Jet(int order, const std::array<double, 4>& point) : order_(order), point_(point) {
    if (order < 0 || order > kMaxJetOrder)
        throw EvalError("jet order out of range [0," + std::to_string(kMaxJetOrder) + "]");
    count_ = table().coeff_count(order);
    std::fill(c_.begin(), c_.begin() + count_, 0.0);
}

Jet Jet::constant(double value, int order, const std::array<double, 4>& point) {
    Jet j(order, point);
    j.c_[0] = value;
    return j;
}

Jet Jet::coordinate(int mu, int order, const std::array<double, 4>& point) {
    if (mu < 0 || mu > 3) throw EvalError("coordinate index out of range");
    Jet j(order, point);
    j.c_[0] = point[mu];
    if (order >= 1) j.c_[1 + mu] = 1.0;
    return j;
}

double Jet::coeff(const MultiIndex& a) const {
    int id = table().id_of(a);
    if (id < 0 || id >= count_) throw EvalError("multi-index beyond jet order");
    return c_[id];
}

double Jet::partial(const MultiIndex& a) const { return coeff(a) * factorial_mi(a); }

Jet Jet::truncate(int new_order) const {
    if (new_order > order_) throw EvalError("truncate cannot raise jet order");
    Jet r(new_order, point_);
    std::copy(c_.begin(), c_.begin() + r.count_, r.c_.begin());
    return r;
}

Jet Jet::derivative(int mu) const {
    if (order_ < 1) throw EvalError("insufficient jet order for derivative");
    Jet r(order_ - 1, point_);
    const auto& t = table();
    for (int i = 0; i < r.count_; ++i) {
        int j = t.bump(i, mu);
        r.c_[i] = c_[j] * (t.mi(i)[mu] + 1);
    }
    return r;
}

void Jet::check_compatible(const Jet& o) const {
    if (order_ != o.order_) throw EvalError("jet order mismatch");
    if (point_ != o.point_) throw EvalError("jet base point mismatch");
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (int i = 0; i < count_; ++i) r.c_[i] = -r.c_[i];
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    check_compatible(o);
    for (int i = 0; i < count_; ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_compatible(o);
    for (int i = 0; i < count_; ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet r(a.order_, a.point_);
    for (const auto& t : table().product_triples(a.order_))
        r.c_[t.k] += a.c_[t.i] * b.c_[t.j];
    return r;
}

Jet operator+(Jet a, double s) {
    a.c_[0] += s;
    return a;
}

Jet operator*(Jet a, double s) {
    for (int i = 0; i < a.count_; ++i) a.c_[i] *= s;
    return a;
}

Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

Jet operator/(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    return a * reciprocal(b);
}

// f(u0 + w) = sum_k d[k] w^k with w the nilpotent part, Horner form.
Jet Jet::compose_series(const Jet& u, const std::array<double, kMaxJetOrder + 1>& d) {
    Jet w = u;
    w.c_[0] = 0.0;
    const int s = u.order_;
    Jet acc = Jet::constant(d[s], s, u.point_);
    for (int k = s - 1; k >= 0; --k) acc = acc * w + d[k];
    return acc;
}

Jet sin(const Jet& a) {
    const int s = a.order_;
    std::array<double, kMaxJetOrder + 1> d{};
    const double sv = std::sin(a.c_[0]), cv = std::cos(a.c_[0]);
    double fact = 1.0;
    for (int k = 0; k <= s; ++k) {
        if (k > 0) fact *= k;
        switch (k % 4) {
            case 0: d[k] = sv / fact; break;
            case 1: d[k] = cv / fact; break;
            case 2: d[k] = -sv / fact; break;
            case 3: d[k] = -cv / fact; break;
        }
    }
    return Jet::compose_series(a, d);
}

Jet cos(const Jet& a) {
    const int s = a.order_;
    std::array<double, kMaxJetOrder + 1> d{};
    const double sv = std::sin(a.c_[0]), cv = std::cos(a.c_[0]);
    double fact = 1.0;
    for (int k = 0; k <= s; ++k) {
        if (k > 0) fact *= k;
        switch (k % 4) {
            case 0: d[k] = cv / fact; break;
            case 1: d[k] = -sv / fact; break;
            case 2: d[k] = -cv / fact; break;
            case 3: d[k] = sv / fact; break;
        }
    }
    return Jet::compose_series(a, d);
}

Jet exp(const Jet& a) {
    const int s = a.order_;
    std::array<double, kMaxJetOrder + 1> d{};
    const double ev = std::exp(a.c_[0]);
    double fact = 1.0;
    for (int k = 0; k <= s; ++k) {
        if (k > 0) fact *= k;
        d[k] = ev / fact;
    }
    return Jet::compose_series(a, d);
}

Jet reciprocal(const Jet& a) {
    if (a.c_[0] == 0.0) throw EvalError("division by a zero-valued jet");
    const int s = a.order_;
    std::array<double, kMaxJetOrder + 1> d{};
    const double inv = 1.0 / a.c_[0];
    double p = inv;
    for (int k = 0; k <= s; ++k) {
        d[k] = (k % 2 == 0) ? p : -p;
        p *= inv;
    }
    return Jet::compose_series(a, d);
}

Jet powi(const Jet& a, int n) {
    if (n < 0) return reciprocal(powi(a, -n));
    Jet r = Jet::constant(1.0, a.order_, a.point_);
    Jet base = a;
    int e = n;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

} // namespace gnvar
