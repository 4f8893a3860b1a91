#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace devgrad {

/// Thread cap: min(hardware, DEVGRAD_THREADS). Results never depend on the
/// count; parallel sweeps write disjoint slots and reductions run on a fixed
/// tree.
inline int max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw > 0 ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("DEVGRAD_THREADS")) {
        int req = std::atoi(env);
        if (req >= 1 && req < cap) cap = req;
    }
    return cap;
}

/// Applies fn(i) for i in [begin, end) with a static contiguous split.
template <class Fn>
void parallel_for(size_t begin, size_t end, Fn&& fn) {
    size_t count = end > begin ? end - begin : 0;
    int threads = max_threads();
    if (threads <= 1 || count < 4096) {
        for (size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    size_t chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        size_t lo = begin + chunk * static_cast<size_t>(t);
        size_t hi = lo + chunk < end ? lo + chunk : end;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Pairwise-tree sum over a materialized buffer; the order is fixed by the
/// buffer layout, so the result is bit-identical for any thread count.
template <class T>
T pairwise_sum(std::vector<T>& buf, T zero) {
    if (buf.empty()) return zero;
    size_t n = buf.size();
    while (n > 1) {
        size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2 == 1) {
            buf[half] = buf[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return buf[0];
}

}  // namespace devgrad
