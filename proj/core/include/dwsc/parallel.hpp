#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dwsc {

// Worker count: DWSC_THREADS caps parallelism when set, otherwise the
// available hardware cores.
inline unsigned default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("DWSC_THREADS")) {
        unsigned long v = std::strtoul(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
    }
    return hw;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers using a static block
// partition. Results written by index are deterministic regardless of the
// worker count. The first exception thrown by a worker is rethrown.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = n * t / threads;
        const std::size_t hi = n * (t + 1) / threads;
        workers.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dwsc
