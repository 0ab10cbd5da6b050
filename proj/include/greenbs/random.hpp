#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace greenbs {

// std::mt19937_64 output is fixed by the standard, the <random>
// distributions are not; these helpers keep draws identical across
// standard libraries.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` derived from `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double exponential(std::mt19937_64& rng, double rate) {
    return -std::log1p(-uniform01(rng)) / rate;
}

} // namespace greenbs
