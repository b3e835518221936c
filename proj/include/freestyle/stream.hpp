#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "freestyle/init.hpp"

namespace freestyle {

inline constexpr std::array<std::uint8_t, 4> frame_magic = {'F', 'S', 'T', 'Y'};
inline constexpr std::uint8_t frame_version = 0x01;
// magic(4) + version(1) + parameters(8) + nonce(12) + bootstrap hashes(56)
inline constexpr std::size_t frame_header_bytes = 81;

struct encrypted_message {
    cipher_parameter params;
    std::array<std::uint8_t, 12> nonce;
    init_hashes boot;
    std::vector<std::uint16_t> block_tags; // one per 64-byte (or final shorter) block
    std::vector<std::uint8_t> ciphertext;  // block bodies, concatenated
};

encrypted_message encrypt_message(const key_material& km, const cipher_parameter& cp,
                                  std::span<const std::uint8_t> plaintext,
                                  random_source& rng,
                                  std::optional<double> skew_q = std::nullopt);

// Scans for the pepper, re-derives the random words, and decrypts every block.
// The key words of km are used; nonce and counter come from the message.
// Throws wrong_key_error, or errc::block_halt_failure if a block never halts.
std::vector<std::uint8_t> decrypt_message(const key_material& km,
                                          const encrypted_message& msg);

std::vector<std::uint8_t> serialize_message(const encrypted_message& msg);

// Throws errc::malformed_frame on bad magic/version, an invalid parameter
// field, a truncated header, or a trailing tag with no body byte.
encrypted_message parse_message(std::span<const std::uint8_t> frame);

// Incremental interface over the same wire format: one initialization, then
// one call per block with a monotonically increasing internal counter. The
// message-level functions above are convenience wrappers over sessions.
class session {
public:
    session(const key_material& km, const cipher_parameter& cp);

    // Sender side: runs initialization, returns the hashes to transmit.
    sender_init begin(random_source& rng, std::optional<double> skew_q = std::nullopt);

    // Receiver side: locates the pepper or throws wrong_key_error.
    receiver_init accept(const init_hashes& tags);

    // One block of 1..64 bytes; spans must have equal length.
    block_result encrypt_next(std::span<const std::uint8_t> plaintext,
                              std::span<std::uint8_t> ciphertext, random_source& rng);

    // Throws errc::block_halt_failure when no checkpoint matches the tag.
    decrypt_result decrypt_next(std::span<const std::uint8_t> ciphertext,
                                std::span<std::uint8_t> plaintext, std::uint16_t tag);

    const random_words& rw() const { return rw_; }
    std::uint64_t blocks_done() const { return counter_; }

private:
    void check_block(std::size_t in, std::size_t out) const;

    key_material km_;
    cipher_parameter cp_;
    cipher_state s0_{};
    random_words rw_{};
    std::unique_ptr<collision_table> table_;
    std::uint64_t counter_ = 0;
    bool ready_ = false;
};

} // namespace freestyle
