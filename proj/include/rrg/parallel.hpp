#ifndef RRG_PARALLEL_HPP
#define RRG_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rrg {

// Index-space worker pool. Each index is processed exactly once and callees
// write results into per-index slots, so the outcome is independent of the
// worker count. Worker count defaults to hardware concurrency; RRG_WORKERS
// overrides it (used by tests to prove worker-count independence).
inline unsigned worker_count() {
    if (const char* env = std::getenv("RRG_WORKERS")) {
        long w = std::strtol(env, nullptr, 10);
        if (w >= 1) return static_cast<unsigned>(w);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(spawn - 1);
    for (unsigned t = 0; t + 1 < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace rrg

#endif
