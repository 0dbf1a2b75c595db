#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace wk {

namespace detail {
inline std::atomic<int>& thread_count_slot() {
    static std::atomic<int> count{0};  // 0 = auto
    return count;
}
}  // namespace detail

inline void set_thread_count(int t) { detail::thread_count_slot().store(t); }

/// Configured worker count: the explicit setting, else WK_THREADS, else all
/// hardware threads.
inline int thread_count() {
    int t = detail::thread_count_slot().load();
    if (t > 0) return t;
    if (const char* env = std::getenv("WK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Runs fn(0..count-1) across the configured workers. Tasks are picked by
/// an atomic index, so outputs written to slot i are identical regardless
/// of the thread count. The first exception is rethrown after the join.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace wk
