#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anagram_forge {

/// Runs fn(task) for every task in [0, count) on up to `workers` threads.
/// Tasks are claimed in index order; the first exception thrown by any task
/// is rethrown on the calling thread after all workers have joined.
template <typename Fn>
void run_tasks(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, count);
    if (threads == 1) {
        for (std::size_t task = 0; task < count; ++task) fn(task);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto loop = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= count) return;
            try {
                fn(task);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(loop);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace anagram_forge
