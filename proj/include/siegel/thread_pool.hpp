#ifndef SIEGEL_THREAD_POOL_HPP
#define SIEGEL_THREAD_POOL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace siegel {

inline int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(i) for i in [0, n_items). Work items must be independent and
/// write-disjoint; output is then identical for any thread count.
inline void parallel_for(int n_items, int n_threads,
                         const std::function<void(int)>& fn) {
    if (n_items <= 0) return;
    if (n_threads <= 0) n_threads = hardware_threads();
    n_threads = std::min(n_threads, n_items);
    if (n_threads == 1) {
        for (int i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n_items) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace siegel

#endif
