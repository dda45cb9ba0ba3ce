#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace xplan {

/// The one generator type used everywhere; callers own and seed it.
using Rng = std::mt19937_64;

/// splitmix64 finalizer, used to derive independent child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the i-th child stream of `base` (episodes, rollouts, trials).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index));
}

/// Uniform double in [0,1) from the top 53 bits; identical on every platform,
/// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0,n), n > 0 (multiply-shift reduction).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

} // namespace xplan
