#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>

#include "freestyle/parameter.hpp"

namespace freestyle {

using cipher_state = std::array<std::uint32_t, 16>;
using random_words = std::array<std::uint32_t, 4>;

inline constexpr std::array<std::uint32_t, 4> sigma = {
    0x61707865, 0x3320646e, 0x79622d32, 0x6b206574}; // "expand 32-byte k"

inline constexpr std::size_t block_bytes = 64;
inline constexpr std::size_t num_bootstrap_blocks = 28;

// Hashes sent during initialization, one per bootstrap block.
using init_hashes = std::array<std::uint16_t, num_bootstrap_blocks>;

struct key_material {
    std::array<std::uint32_t, 8> key;
    std::array<std::uint32_t, 3> nonce;
    std::uint32_t counter = 0;
};

// key must be 16 or 32 bytes (a 16-byte key is used twice), nonce 12 bytes.
key_material make_key_material(std::span<const std::uint8_t> key,
                               std::span<const std::uint8_t> nonce,
                               std::uint32_t counter = 0);

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
    a += b; d ^= a; d = std::rotl(d, 16);
    c += d; b ^= c; b = std::rotl(b, 12);
    a += b; d ^= a; d = std::rotl(d, 8);
    c += d; b ^= c; b = std::rotl(b, 7);
}

// Round r >= 1: odd rounds mix columns, even rounds mix diagonals.
inline void apply_round(cipher_state& s, std::uint32_t r) {
    if (r & 1) {
        quarter_round(s[0], s[4], s[8], s[12]);
        quarter_round(s[1], s[5], s[9], s[13]);
        quarter_round(s[2], s[6], s[10], s[14]);
        quarter_round(s[3], s[7], s[11], s[15]);
    } else {
        quarter_round(s[0], s[5], s[10], s[15]);
        quarter_round(s[1], s[6], s[11], s[12]);
        quarter_round(s[2], s[7], s[8], s[13]);
        quarter_round(s[3], s[4], s[9], s[14]);
    }
}

// Initial state layout:
//   0..3   constants; the first three XORed with random words, the fourth kept plain
//          so the pepper can be added to it during initialization
//   4..11  key words; the first two XORed with the packed parameter halves
//   12     counter XOR fourth random word
//   13..15 nonce words
// packed_params == 0 and rw == {0,0,0,0} reproduce the plain ChaCha layout.
cipher_state build_initial_state(const key_material& km, std::uint64_t packed_params,
                                 const random_words& rw);

// Validates the parameter set, then builds from its packed form.
cipher_state build_initial_state(const key_material& km, const cipher_parameter& cp,
                                 const random_words& rw);

// Serializes (final + initial) words little-endian: the keystream block.
std::array<std::uint8_t, block_bytes> keystream(const cipher_state& initial,
                                                const cipher_state& final_state);

namespace detail {

inline std::uint32_t load_le32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v);
    p[1] = std::uint8_t(v >> 8);
    p[2] = std::uint8_t(v >> 16);
    p[3] = std::uint8_t(v >> 24);
}

} // namespace detail

} // namespace freestyle
