#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "devgrad/vecmat.hpp"

namespace devgrad {

/// Deterministic RNG wrapper. All sampling goes through explicit integer
/// arithmetic so a fixed seed reproduces the same stream everywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) : g_(seed) {}

    uint64_t next_u64() { return g_(); }

    /// Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(next_u64() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec<double> vector(int n, double lo = -1.0, double hi = 1.0) {
        Vec<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    Vec<double> unit_vector(int n) {
        while (true) {
            Vec<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = normal();
            double nv = norm2(v);
            if (nv > 1e-8) return (1.0 / nv) * v;
        }
    }

    /// Small rational p/q with p in [-9,9], q in [1,9].
    Rational rational() {
        long long p = uniform_int(-9, 9);
        long long q = uniform_int(1, 9);
        return rational_of(p, q);
    }

    Rational nonzero_rational() {
        while (true) {
            Rational r = rational();
            if (r != 0) return r;
        }
    }

    Vec<Rational> rational_vector(int n) {
        Vec<Rational> v(n);
        for (int i = 0; i < n; ++i) v[i] = rational();
        return v;
    }

  private:
    std::mt19937_64 g_;
};

}  // namespace devgrad
