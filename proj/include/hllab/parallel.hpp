#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hllab {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index
// writes only its own results, so output is independent of scheduling.
inline void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace hllab
