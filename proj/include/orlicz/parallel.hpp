#pragma once

// Deterministic parallel map over an index range.  The worker count is capped
// by the ORLICZ_LAB_THREADS environment variable; results must be written to
// caller-owned slots so the reduction order never depends on scheduling.

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace orlicz {

inline int thread_cap() {
    if (const char* env = std::getenv("ORLICZ_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const int cap = thread_cap();
    if (cap <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cap), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace orlicz
