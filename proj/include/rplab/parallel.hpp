#pragma once

// Deterministic sample-parallel loop: the index range is split across
// workers, each index writes only its own slot, so results never depend
// on the worker count.

#include <functional>
#include <thread>
#include <vector>

namespace rplab {

inline int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

template <typename Fn>
void parallel_for(long n, Fn&& fn, int workers = 0) {
    if (workers <= 0) workers = default_workers();
    if (workers == 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (long i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rplab
