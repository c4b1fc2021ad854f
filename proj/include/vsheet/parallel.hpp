#pragma once
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace vsheet {

// Number of worker threads to use: requested if > 0, hardware count if 0.
inline std::size_t resolve_threads(int requested) {
    if (requested > 0) return (std::size_t)requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (std::size_t)hw;
}

// Static strided partition: worker t handles indices t, t+T, t+2T, ...
// Each index must touch only its own output slots; with that discipline the
// result is byte-identical for any thread count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
    std::size_t T = resolve_threads(threads);
    if (T > n) T = n == 0 ? 1 : n;
    if (T <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (std::size_t t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += T) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace vsheet
