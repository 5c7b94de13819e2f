// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace glint {

inline int default_worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(begin..end) split into `blocks` contiguous ranges pulled by up to
/// `workers` threads. Block boundaries depend only on (begin, end, blocks), so
/// per-block results can be reduced in block order for bitwise-stable sums
/// regardless of scheduling.
inline void parallel_blocks(int begin, int end, int blocks, int workers,
                            const std::function<void(int block, int lo, int hi)>& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    if (blocks > n) blocks = n;
    if (blocks < 1) blocks = 1;
    if (workers < 1) workers = 1;

    auto block_range = [&](int b, int& lo, int& hi) {
        const int base = n / blocks, extra = n % blocks;
        lo = begin + b * base + std::min(b, extra);
        hi = lo + base + (b < extra ? 1 : 0);
    };

    if (workers == 1 || blocks == 1) {
        for (int b = 0; b < blocks; ++b) {
            int lo, hi;
            block_range(b, lo, hi);
            fn(b, lo, hi);
        }
        return;
    }

    std::atomic<int> next{0};
    auto run = [&] {
        for (;;) {
            const int b = next.fetch_add(1);
            if (b >= blocks) return;
            int lo, hi;
            block_range(b, lo, hi);
            fn(b, lo, hi);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min(workers, blocks) - 1;
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

/// Simple parallel loop over [begin, end) where iterations are independent.
inline void parallel_for(int begin, int end, int workers,
                         const std::function<void(int)>& fn) {
    parallel_blocks(begin, end, end - begin, workers,
                    [&](int, int lo, int hi) {
                        for (int i = lo; i < hi; ++i) fn(i);
                    });
}

}  // namespace glint
