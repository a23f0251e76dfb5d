#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace covertpress {

// Worker count: COVERTPRESS_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("COVERTPRESS_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Splits [0, count) into fixed chunks and runs fn(chunk_index, begin, end)
// on a pool. Chunk boundaries do not depend on the worker count, so any
// chunk-indexed accumulation merged in chunk order is schedule-independent.
inline void parallel_chunks(uint64_t count, uint64_t chunk,
                            const std::function<void(uint64_t, uint64_t, uint64_t)>& fn) {
    if (count == 0) return;
    uint64_t n_chunks = (count + chunk - 1) / chunk;
    unsigned workers = std::min<uint64_t>(worker_count(), n_chunks);
    if (workers <= 1) {
        for (uint64_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(count, (c + 1) * chunk));
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<uint64_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c, c * chunk, std::min(count, (c + 1) * chunk));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace covertpress
