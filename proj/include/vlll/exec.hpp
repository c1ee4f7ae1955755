#pragma once
#include <cstdint>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vlll {

// Uniform double in [lo, hi) from raw 64-bit draws. Unlike
// std::uniform_real_distribution this is identical across standard library
// implementations, so seeded results reproduce everywhere.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

// Worker-thread cap. Resolved once from the LLL_THREADS environment variable;
// 0 means "whatever the runtime gives us".
int worker_threads();
void set_worker_threads(int n);

// Kahan-compensated accumulator.
struct kahan_sum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Sums f(0..n-1) in fixed-size blocks. Blocks are evaluated in parallel but
// combined in block order, so the result does not depend on the thread count.
template <class F>
double deterministic_sum(std::int64_t n, F&& f) {
    constexpr std::int64_t block = 1 << 12;
    const std::int64_t nblocks = (n + block - 1) / block;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
#endif
    for (std::int64_t b = 0; b < nblocks; ++b) {
        kahan_sum acc;
        const std::int64_t lo = b * block;
        const std::int64_t hi = lo + block < n ? lo + block : n;
        for (std::int64_t i = lo; i < hi; ++i) acc.add(f(i));
        partial[static_cast<std::size_t>(b)] = acc.value();
    }
    kahan_sum total;
    for (double p : partial) total.add(p);
    return total.value();
}

// Serial twin of deterministic_sum, kept as the reference implementation.
template <class F>
double deterministic_sum_serial(std::int64_t n, F&& f) {
    kahan_sum acc;
    for (std::int64_t i = 0; i < n; ++i) acc.add(f(i));
    return acc.value();
}

} // namespace vlll
