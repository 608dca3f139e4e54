// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

namespace drx {

// SplitMix64 finalizer, used to spread (seed, point, trial) triples over the
// engine seed space.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. std::normal_distribution is
// implementation-defined, so Gaussian draws use an explicit Box-Muller
// transform on top of mt19937_64; a given seed reproduces the same sequence
// everywhere.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Two independent N(0, 1) draws.
    std::pair<double, double> normal_pair() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    double normal() { return normal_pair().first; }

    // CN(0, 1): real and imaginary parts i.i.d. N(0, 1/2).
    std::complex<double> complex_normal() {
        const auto [a, b] = normal_pair();
        return {a * M_SQRT1_2, b * M_SQRT1_2};
    }

    // Uniform index in [0, n).
    int uniform_index(int n) {
        const int k = static_cast<int>(uniform01() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Work-unit stream derivation: the same (master_seed, point_id, trial_idx)
// triple always yields the same stream, independent of scheduling order or
// thread count.
inline RandomStream derive_stream(std::uint64_t master_seed,
                                  std::uint64_t point_id,
                                  std::uint64_t trial_idx) {
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ (0x517cc1b727220a95ULL + point_id));
    s = mix64(s ^ (0x2545f4914f6cdd1dULL + trial_idx));
    return RandomStream(s);
}

}  // namespace drx
