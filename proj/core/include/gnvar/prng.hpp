#pragma once

#include <array>
#include <cstdint>

namespace gnvar {

// splitmix64. The exact sequence is part of the report contract: a port in
// another language must reproduce the same sample points from the same seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 bits of precision
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::array<double, 4> point_in_box(const std::array<double, 4>& lo,
                                       const std::array<double, 4>& hi) {
        std::array<double, 4> p{};
        for (int i = 0; i < 4; ++i) p[i] = uniform(lo[i], hi[i]);
        return p;
    }

private:
    std::uint64_t state_;
};

} // namespace gnvar
