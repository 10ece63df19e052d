#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace psvm {

/// SplitMix64 mixing step. Used to derive engine seeds; never used as the
/// main generator itself.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic substream: stream `index` of run `seed`. Distinct indices
/// give statistically independent engines, so per-particle streams can be
/// evaluated in any order (or concurrently) without perturbing results.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

/// Uniform double in [0, 1). Hand-rolled (53-bit mantissa) instead of
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

/// Unbiased integer in [0, bound) via Lemire's multiply-shift with rejection.
inline std::uint64_t bounded_rand(std::mt19937_64& g, std::uint64_t bound) {
    std::uint64_t x = g();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        std::uint64_t threshold = -bound % bound;
        while (lo < threshold) {
            x = g();
            m = static_cast<__uint128_t>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Fisher-Yates shuffle driven by bounded_rand, reproducible across
/// standard-library implementations (std::shuffle is not).
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& g) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[bounded_rand(g, i)]);
    }
}

} // namespace psvm
