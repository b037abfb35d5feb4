#include "joinmi/hashing.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

namespace joinmi {
namespace {

std::uint32_t load_le32(const unsigned char* p) noexcept {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

constexpr std::uint32_t fmix32(std::uint32_t h) noexcept {
    h ^= h >> 16;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    h *= 0xc2b2ae35u;
    h ^= h >> 16;
    return h;
}

}  // namespace

std::uint32_t murmur3_x86_32(std::string_view bytes, std::uint32_t seed) noexcept {
    constexpr std::uint32_t c1 = 0xcc9e2d51u;
    constexpr std::uint32_t c2 = 0x1b873593u;

    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t len = bytes.size();
    const std::size_t nblocks = len / 4;
    std::uint32_t h1 = seed;

    for (std::size_t i = 0; i < nblocks; ++i) {
        std::uint32_t k1 = load_le32(data + 4 * i);
        k1 *= c1;
        k1 = std::rotl(k1, 15);
        k1 *= c2;
        h1 ^= k1;
        h1 = std::rotl(h1, 13);
        h1 = h1 * 5 + 0xe6546b64u;
    }

    const unsigned char* tail = data + 4 * nblocks;
    std::uint32_t k1 = 0;
    switch (len & 3) {
        case 3:
            k1 ^= static_cast<std::uint32_t>(tail[2]) << 16;
            [[fallthrough]];
        case 2:
            k1 ^= static_cast<std::uint32_t>(tail[1]) << 8;
            [[fallthrough]];
        case 1:
            k1 ^= tail[0];
            k1 *= c1;
            k1 = std::rotl(k1, 15);
            k1 *= c2;
            h1 ^= k1;
    }

    h1 ^= static_cast<std::uint32_t>(len);
    return fmix32(h1);
}

KeyHash hash_key(std::string_view key, std::uint32_t seed) noexcept {
    return KeyHash{murmur3_x86_32(key, seed)};
}

KeyHash hash_derived_key(std::string_view key, std::uint32_t occurrence, std::uint32_t seed) {
    if (occurrence == 0) throw std::invalid_argument("occurrence index is 1-based");
    std::string buf;
    buf.reserve(key.size() + 5);
    buf.append(key);
    buf.push_back(kDerivedKeySeparator);
    for (int shift = 0; shift < 32; shift += 8)
        buf.push_back(static_cast<char>((occurrence >> shift) & 0xffu));
    return KeyHash{murmur3_x86_32(buf, seed)};
}

}  // namespace joinmi
