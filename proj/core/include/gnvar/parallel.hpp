#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gnvar {

// Thread count from GNVAR_THREADS; defaults to 1 (fully sequential runs).
inline int thread_count() {
    if (const char* env = std::getenv("GNVAR_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Runs fn(i) for i in [0,n). Results must be written into preallocated,
// index-addressed slots so the output is identical for any thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int threads = thread_count();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t nt = std::min<std::size_t>(threads, n);
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Pairwise-tree reduction of a vector of doubles. The topology depends only
// on the element count, so sums are bitwise reproducible regardless of how
// the elements were produced.
inline double pairwise_sum(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    std::vector<double> buf = xs;
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2) {
            buf[half] = buf[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return buf[0];
}

} // namespace gnvar
