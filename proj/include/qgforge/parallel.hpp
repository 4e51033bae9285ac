#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qgforge {

// Worker count for parallel loops: hardware concurrency, capped by the
// QGFORGE_THREADS environment variable when set to a positive integer.
inline int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("QGFORGE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v < hw) hw = static_cast<int>(v);
    }
    return hw;
}

// Runs body(i) for i in [begin, end) across worker threads in contiguous
// blocks. Callers keep determinism by writing results into per-index slots.
template <class F>
void parallel_for(int begin, int end, F&& body) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers <= 1 || n < 4) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace qgforge
