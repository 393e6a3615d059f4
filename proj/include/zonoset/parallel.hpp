#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace zonoset {

/// Worker count for internal parallel loops. ZONOSET_THREADS caps it;
/// 0 or unset means hardware concurrency.
inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZONOSET_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
    }
    return hw;
}

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are disjoint,
/// so bodies writing only to their own index range produce results that do not
/// depend on the thread count.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body, std::size_t min_chunk = 4096) {
    const std::size_t workers =
        std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * step, e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace zonoset
