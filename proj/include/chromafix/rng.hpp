// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <cmath>
#include <cstdint>

namespace chromafix {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Scrambles a (key, index) pair into a stream seed.
inline std::uint64_t mix_key(std::uint64_t key, std::uint64_t index) {
    std::uint64_t s = key;
    std::uint64_t h = splitmix64(s);
    s ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= splitmix64(s);
    return h;
}

/// Deterministic counter-based generator: the stream is a pure function of
/// (seed, index), independent of call order across streams.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index) : state_(mix_key(seed, index)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Box-Muller normal.
    double normal(double mean, double sigma) {
        if (has_cached_) {
            has_cached_ = false;
            return mean + sigma * cached_;
        }
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return mean + sigma * radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace chromafix
