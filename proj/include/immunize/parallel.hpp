#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace immunize {

// Runs fn(begin, end) over disjoint chunks of [0, n). Falls back to a single
// inline call for small n. Each chunk writes only its own output slots, so
// results are independent of thread scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t min_chunk = 2048) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t threads = std::max<std::size_t>(1, hw);
    if (n < 2 * min_chunk || threads == 1) {
        fn(0, n);
        return;
    }
    threads = std::min(threads, (n + min_chunk - 1) / min_chunk);
    std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t b = t * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& th : pool) th.join();
}

} // namespace immunize
