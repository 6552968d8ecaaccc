#ifndef UPLIFT_THREADS_HPP
#define UPLIFT_THREADS_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace uplift {

// Worker count: hardware concurrency capped by UPLIFT_THREADS.
inline int worker_count() {
    int hw = (int)std::thread::hardware_concurrency();
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("UPLIFT_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

// Static block split of [0, n). The body must be safe to run concurrently
// on disjoint indices; results keyed by index stay deterministic regardless
// of the worker count.
template <typename F>
void parallel_for(int n, F&& body) {
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace uplift

#endif
