#ifndef COLLINEAR_PARALLEL_HPP
#define COLLINEAR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace collinear {

/// Resolve a thread budget: 0 means "all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Calls body(i) for every i in [0, count) using at most `threads` workers.
/// Indices are handed out dynamically; callers must write only to slots
/// owned by their index so results do not depend on scheduling. The first
/// exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

/// Per-worker variant: body(worker_index, i). Each worker owns a scratch
/// slot in [0, workers) so expensive workspaces can be reused.
template <class Body>
void parallel_for_workers(std::size_t count, unsigned workers, Body&& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(0u, i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](unsigned worker) {
        try {
            for (std::size_t i = next++; i < count; i = next++) body(worker, i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace collinear

#endif  // COLLINEAR_PARALLEL_HPP
