#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcap {

/// 0 means "use the hardware concurrency".
inline unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs body(i) for every i in [0, tasks) on up to `workers` threads. Tasks
 * are claimed dynamically, so callers must write results into per-task
 * slots and merge them in index order afterwards. The first exception thrown
 * by any task is rethrown on the calling thread.
 */
template <class Body>
void parallel_for(std::size_t tasks, unsigned workers, Body&& body) {
    workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(tasks, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace rcap
