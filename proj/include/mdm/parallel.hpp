#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mdm {

// Chunked parallel loop: body(begin, end) on disjoint ranges. Results must not
// depend on the partition; callers index per-element streams/outputs so any
// thread count produces identical values.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    if (threads <= 1 || n < 2048) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mdm
