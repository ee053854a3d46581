// Benchmark comparing the serial reference kernels against the OpenMP
// paths. Prints one row per kernel with both timings and the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tmset/families.hpp"
#include "tmset/parallel.hpp"
#include "tmset/window.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    using namespace tmset;
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled (parallel path degrades to serial)\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel",
                "speedup");

    const auto ruler = families::preset("ruler-alt", 48);
    const auto half = families::preset("half-dim", 16);

    {
        const std::int64_t a = -300000, b = 300000;
        double s = time_ms([&] { eval_range(ruler, a, b, 48, Exec::serial); });
        double p = time_ms([&] { eval_range(ruler, a, b, 48, Exec::parallel); });
        row("eval_range ruler-alt 600k", s, p);
    }
    {
        const std::int64_t a = -60000, b = 60000;
        double s = time_ms([&] { project(ruler, a, b, 48, Exec::serial); });
        double p = time_ms([&] { project(ruler, a, b, 48, Exec::parallel); });
        row("project ruler-alt 120k", s, p);
    }
    {
        Word w = make_word(half, 0, 1 << 20, 16);
        double s = time_ms([&] { brute_per(w, 4096, 4096, Exec::serial); });
        double p = time_ms([&] { brute_per(w, 4096, 4096, Exec::parallel); });
        row("brute_per half-dim 1M", s, p);
    }
    {
        double s = time_ms([&] { complexity(half, 24, 0, 1 << 20, 16,
                                            Exec::serial); });
        double p = time_ms([&] { complexity(half, 24, 0, 1 << 20, 16,
                                            Exec::parallel); });
        row("complexity half-dim n=24", s, p);
    }
    {
        // Not a like-for-like pair: the serial path expands layer lifts,
        // the parallel path classifies each residue through the rule.
        double s = time_ms([&] { half.fill_map(10, Exec::serial); });
        double p = time_ms([&] { half.fill_map(10, Exec::parallel); });
        row("fill_map routes p=4^10", s, p);
    }
    return 0;
}
