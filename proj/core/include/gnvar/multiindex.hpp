#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gnvar {

// Multi-index over the four chart coordinates x0..x3.
using MultiIndex = std::array<int, 4>;

inline int mi_order(const MultiIndex& a) { return a[0] + a[1] + a[2] + a[3]; }

// Highest jet order the engine supports. The Einstein-Cartan-Dirac suites
// need field jets to order 4 (second Euler-Lagrange pass over a
// second-order inner Lagrangian); tables are enumerated exhaustively.
inline constexpr int kMaxJetOrder = 4;

double factorial_mi(const MultiIndex& a); // a0! a1! a2! a3!

// Canonical enumeration: graded order first, lexicographically descending
// within a grade, so id 1..4 are the four first derivatives d0..d3.
// The first coeff_count(s) entries are exactly the indices of order <= s,
// which makes truncation a prefix copy.
class MultiIndexTable {
public:
    static const MultiIndexTable& instance();

    int coeff_count(int order) const { return prefix_[order + 1]; }
    int total() const { return prefix_[kMaxJetOrder + 1]; }

    const MultiIndex& mi(int id) const { return list_[id]; }
    int order_of(int id) const { return orders_[id]; }
    int id_of(const MultiIndex& a) const; // -1 if |a| > kMaxJetOrder

    // id of a + e_mu, or -1 past the table
    int bump(int id, int mu) const { return bump_[id][mu]; }

    // Product support: all (i, j, k) with mi(i) + mi(j) = mi(k) and
    // |mi(k)| <= order, grouped for the truncated convolution.
    struct ProductTriple {
        std::uint16_t i, j, k;
    };
    const std::vector<ProductTriple>& product_triples(int order) const {
        return triples_[order];
    }

    double factorial(int id) const { return fact_[id]; }

private:
    MultiIndexTable();

    std::vector<MultiIndex> list_;
    std::vector<int> orders_;
    std::vector<double> fact_;
    std::array<int, kMaxJetOrder + 2> prefix_{};
    std::vector<std::array<int, 4>> bump_;
    std::array<std::vector<ProductTriple>, kMaxJetOrder + 1> triples_;
};

} // namespace gnvar
