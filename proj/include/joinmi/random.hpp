#pragma once

#include <cstdint>
#include <random>

namespace joinmi::rng {

using Engine = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(mix64(seed) ^ stream);
}

// The std distributions are implementation-defined; these two keep sketch
// bytes identical across standard libraries.

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Engine& e) noexcept { return static_cast<double>(e() >> 11) * 0x1p-53; }

/// Uniform integer in [0, bound) by multiply-shift (bias below bound / 2^64).
inline std::uint64_t bounded(Engine& e, std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(e()) * bound) >> 64);
}

}  // namespace joinmi::rng
