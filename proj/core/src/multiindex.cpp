#include "gnvar/multiindex.hpp"

#include <algorithm>
#include <map>

namespace gnvar {

double factorial_mi(const MultiIndex& a) {
    static const double f[5] = {1, 1, 2, 6, 24};
    return f[a[0]] * f[a[1]] * f[a[2]] * f[a[3]];
}

namespace {

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int oa = mi_order(a), ob = mi_order(b);
    if (oa != ob) return oa < ob;
    return a > b; // within a grade: lexicographically descending
}

} // namespace

const MultiIndexTable& MultiIndexTable::instance() {
    static MultiIndexTable table;
    return table;
}

MultiIndexTable::MultiIndexTable() {
    for (int a0 = 0; a0 <= kMaxJetOrder; ++a0)
        for (int a1 = 0; a1 + a0 <= kMaxJetOrder; ++a1)
            for (int a2 = 0; a2 + a1 + a0 <= kMaxJetOrder; ++a2)
                for (int a3 = 0; a3 + a2 + a1 + a0 <= kMaxJetOrder; ++a3)
                    list_.push_back({a0, a1, a2, a3});
    std::sort(list_.begin(), list_.end(), grlex_less);

    std::map<MultiIndex, int> pos;
    for (int i = 0; i < static_cast<int>(list_.size()); ++i) pos[list_[i]] = i;

    orders_.resize(list_.size());
    fact_.resize(list_.size());
    bump_.resize(list_.size());
    for (int i = 0; i < static_cast<int>(list_.size()); ++i) {
        orders_[i] = mi_order(list_[i]);
        fact_[i] = factorial_mi(list_[i]);
        for (int mu = 0; mu < 4; ++mu) {
            MultiIndex b = list_[i];
            b[mu] += 1;
            auto it = pos.find(b);
            bump_[i][mu] = (it == pos.end()) ? -1 : it->second;
        }
    }

    prefix_[0] = 0;
    for (int s = 0; s <= kMaxJetOrder; ++s) {
        int count = 0;
        for (int o : orders_)
            if (o <= s) ++count;
        prefix_[s + 1] = count;
    }

    for (int s = 0; s <= kMaxJetOrder; ++s) {
        auto& tr = triples_[s];
        const int n = coeff_count(s);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (orders_[i] + orders_[j] > s) continue;
                MultiIndex sum;
                for (int d = 0; d < 4; ++d) sum[d] = list_[i][d] + list_[j][d];
                tr.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                              static_cast<std::uint16_t>(pos.at(sum))});
            }
        }
        // sort by destination for cache-friendly accumulation
        std::sort(tr.begin(), tr.end(), [](const ProductTriple& a, const ProductTriple& b) {
            if (a.k != b.k) return a.k < b.k;
            return a.i < b.i;
        });
    }
}

int MultiIndexTable::id_of(const MultiIndex& a) const {
    if (mi_order(a) > kMaxJetOrder) return -1;
    for (int d = 0; d < 4; ++d)
        if (a[d] < 0) return -1;
    // small table; linear scan within the grade is fine, but binary search
    // over the grlex order keeps lookups O(log n)
    auto it = std::lower_bound(list_.begin(), list_.end(), a, grlex_less);
    if (it == list_.end() || *it != a) return -1;
    return static_cast<int>(it - list_.begin());
}

} // namespace gnvar
