// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace glasswarp {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count). Work is handed out in chunks through a
// shared counter; every index is processed exactly once, so writers that
// own disjoint output slots per index stay deterministic under any
// thread count.
inline void parallel_for(int64_t count, int threads,
                         const std::function<void(int64_t)> &fn) {
    threads = resolve_thread_count(threads);
    if (threads <= 1 || count <= 1) {
        for (int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int64_t chunk = std::max<int64_t>(1, count / (threads * 16));
    std::atomic<int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            int64_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            int64_t end = std::min(begin + chunk, count);
            for (int64_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();
}

} // namespace glasswarp
