#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "freestyle/block.hpp"

namespace freestyle {

struct sender_init {
    init_hashes tags;
    random_words rw;
    std::uint32_t pepper;          // offset the receiver will actually halt at
    std::uint64_t rounds_executed; // bootstrap generation plus the pre-scan
};

struct receiver_init {
    random_words rw;
    std::uint32_t pepper;
    std::uint64_t offsets_scanned;
    std::uint64_t rounds_executed;
};

// Folds a vector of bootstrap round counts (entries in [12, 36]) into 128 bits:
// each count maps to a base-25 digit, and the positional value mod 2^128 is
// split into four little-endian words.
random_words derive_random_words(std::span<const std::uint32_t> rounds);

// Runs the sender side of initialization: draws a pepper (uniform, or skewed
// when skew_q is given), generates the bootstrap hashes under the temporary
// round policy, then scans lower offsets the way a receiver would and adopts
// the first colliding offset's round counts if one exists.
sender_init init_sender(const key_material& km, const cipher_parameter& cp,
                        random_source& rng,
                        std::optional<double> skew_q = std::nullopt);

// Scans the pepper space for the first offset whose 28 decrypt attempts all
// halt. Throws wrong_key_error after exhausting the space.
receiver_init init_receiver(const key_material& km, const cipher_parameter& cp,
                            const init_hashes& tags);

namespace detail {

// Temporary round policy used for every bootstrap block.
inline constexpr round_params bootstrap_params{12, 36, 1, 3};
inline constexpr std::uint32_t bootstrap_max_rounds = 36;

struct scan_result {
    bool found = false;
    std::uint32_t offset = 0;
    std::vector<std::uint32_t> rounds;
    std::uint64_t offsets_scanned = 0;
    std::uint64_t rounds_executed = 0;
};

// Receiver-style scan over offsets [0, max_offsets) added to the fourth
// constant word of s0_base. An offset fails at its first non-halting block.
scan_result scan_bootstrap(const cipher_state& s0_base,
                           std::span<const std::uint16_t> tags,
                           std::uint64_t max_offsets);

struct sender_init_ex {
    std::vector<std::uint16_t> tags;
    random_words rw;
    std::uint32_t pepper;
    std::uint64_t rounds_executed;
};

// init_sender with the pepper optionally forced and the bootstrap block count
// variable; the public entry point uses boot_count = 28. A count of 1 makes
// lower-offset collisions (and thus round-vector adoption) reachable in tests.
sender_init_ex init_sender_ex(const key_material& km, const cipher_parameter& cp,
                              random_source& rng, std::optional<double> skew_q,
                              std::optional<std::uint32_t> forced_pepper,
                              std::size_t boot_count);

receiver_init init_receiver_span(const key_material& km, const cipher_parameter& cp,
                                 std::span<const std::uint16_t> tags);

} // namespace detail

} // namespace freestyle
