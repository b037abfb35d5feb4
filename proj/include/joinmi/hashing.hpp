#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace joinmi {

/// 32-bit digest of a join key. Sketches on both sides of a join must agree
/// on this value for the same raw key; it is what the sketch join matches on.
struct KeyHash {
    std::uint32_t bits = 0;

    friend constexpr auto operator<=>(KeyHash, KeyHash) = default;
};

// Identifies the hash pipeline inside serialized sketches. Bump when any
// constant below changes.
inline constexpr std::string_view kHashContract = "murmur3_x86_32/seed0+fib32";

// round(2^32 / golden ratio)
inline constexpr std::uint32_t kFibonacciMultiplier = 2654435769u;

// Separator between a key and its occurrence index in derived keys.
inline constexpr char kDerivedKeySeparator = '\x1f';

/// MurmurHash3, x86 32-bit variant.
std::uint32_t murmur3_x86_32(std::string_view bytes, std::uint32_t seed) noexcept;

/// Hash of a raw join key (seed 0 unless a selection seed is requested).
KeyHash hash_key(std::string_view key, std::uint32_t seed = 0) noexcept;

/// Hash of the occurrence-indexed key <key, occurrence>, encoded as
/// key || 0x1F || occurrence (4-byte little endian). occurrence is 1-based.
KeyHash hash_derived_key(std::string_view key, std::uint32_t occurrence,
                         std::uint32_t seed = 0);

/// Fibonacci multiplicative mix: (h * 2654435769) mod 2^32. Ordering by this
/// value is the same as ordering by unit_hash, without leaving integers.
constexpr std::uint32_t fibonacci_mix(KeyHash h) noexcept {
    return static_cast<std::uint32_t>(h.bits * kFibonacciMultiplier);
}

/// Maps a key hash into [0, 1).
constexpr double unit_hash(KeyHash h) noexcept {
    return static_cast<double>(fibonacci_mix(h)) * 0x1p-32;
}

}  // namespace joinmi
