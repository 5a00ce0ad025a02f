#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace contractum {

/// Worker count: CONTRACTUM_THREADS when set and positive, else hardware concurrency.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CONTRACTUM_THREADS")) {
        try {
            long requested = std::stol(env);
            if (requested >= 1)
                return static_cast<unsigned>(std::min<long>(requested, hw));
        } catch (...) {
        }
    }
    return hw;
}

/// Runs body(i) for i in [0, n) with results collected per index.
///
/// Each index writes only its own slot, so the caller's reduction over the
/// returned vector is independent of scheduling.
template <class Result, class Body>
std::vector<Result> parallel_map(std::size_t n, Body&& body, unsigned workers = thread_budget()) {
    std::vector<Result> results(n);
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            results[i] = body(i);
        return results;
    }
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    results[i] = body(i);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);
    return results;
}

} // namespace contractum
