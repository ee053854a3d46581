// Index-loop helper backing the OpenMP kernels. The serial branch is the
// reference path used by tests; the parallel branch propagates the first
// exception thrown by any iteration.
#pragma once

#include <atomic>
#include <cstdint>
#include <exception>

#include "tmset/exec.hpp"

namespace tmset {

inline bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

template <typename F>
void for_each_index(std::int64_t n, Exec exec, F&& body) {
    if (exec == Exec::serial || !parallel_available()) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            body(i);
        } catch (...) {
#pragma omp critical
            {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace tmset
