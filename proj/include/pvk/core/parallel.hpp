#ifndef PVK_CORE_PARALLEL_HPP
#define PVK_CORE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pvk {

// Default worker count: PVK_THREADS env var, else hardware concurrency.
inline int default_thread_count() {
    if (const char* env = std::getenv("PVK_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. Tasks are claimed
// from a shared counter; each task writes only its own slot, so results are
// identical for any worker count.
inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    const int n = int(std::min<std::size_t>(std::size_t(workers), count));
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(n));
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

}  // namespace pvk

#endif
