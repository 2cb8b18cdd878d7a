#pragma once

// Fan-out of independent samples to a small thread pool. Results land at
// their sample index, so any reduction over them is order-deterministic.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qdk::cli {

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned threads, F&& fn) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(count);
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // the lowest failing index wins, whatever the scheduling
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return out;
}

}  // namespace qdk::cli
