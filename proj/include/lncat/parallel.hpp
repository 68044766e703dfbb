#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lncat {

/// 0 means "auto": one worker per hardware thread.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Apply fn(i) for every i in [0, n), statically chunked over `threads`
/// workers. Callers must write results to slots indexed by i so the outcome
/// does not depend on scheduling. The first exception thrown by any worker is
/// rethrown after all workers have joined.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (n <= 0) return;
    threads = std::min(resolve_threads(threads), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&fn, &error, &error_mutex, n, threads, t] {
            const auto begin = static_cast<std::int64_t>(n) * t / threads;
            const auto end = static_cast<std::int64_t>(n) * (t + 1) / threads;
            try {
                for (std::int64_t i = begin; i < end; ++i) fn(static_cast<int>(i));
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (std::thread& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace lncat
