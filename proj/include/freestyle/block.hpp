#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freestyle/core.hpp"
#include "freestyle/entropy.hpp"
#include "freestyle/hash.hpp"
#include "freestyle/parameter.hpp"

namespace freestyle {

struct block_result {
    std::uint32_t rounds;      // the randomly drawn round count
    std::uint16_t tag;         // hash emitted at the final round
    std::uint32_t checkpoints; // hash checkpoints evaluated
};

struct decrypt_result {
    std::uint32_t rounds;      // recovered round count; 0 = no checkpoint matched
    std::uint32_t checkpoints; // checkpoints evaluated before halting (or all of them)
};

// Encrypts one block of at most 64 bytes at the given block counter. Draws the
// round count uniformly from the checkpoint rounds, runs the cipher, and emits
// the final (collision-probed) checkpoint tag. plaintext/ciphertext must have
// equal length; empty spans compute the tag without producing output, which is
// how bootstrap blocks run. The table is reset on entry. tag_trace, when
// given, receives every checkpoint tag in emission order.
block_result encrypt_block(const cipher_state& s0, const random_words& rw,
                           const round_params& rp, std::uint32_t counter,
                           std::span<const std::uint8_t> plaintext,
                           std::span<std::uint8_t> ciphertext, random_source& rng,
                           collision_table& table,
                           std::vector<std::uint16_t>* tag_trace = nullptr);

// Runs rounds until a checkpoint's probed hash equals `expected`, then
// decrypts the body with the halted keystream. Returns rounds == 0 when no
// checkpoint matches by max_rounds; the output span is untouched in that case.
decrypt_result decrypt_block(const cipher_state& s0, const random_words& rw,
                             const round_params& rp, std::uint32_t counter,
                             std::uint16_t expected,
                             std::span<const std::uint8_t> ciphertext,
                             std::span<std::uint8_t> plaintext, collision_table& table);

} // namespace freestyle
