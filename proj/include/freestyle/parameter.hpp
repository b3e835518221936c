#pragma once

#include <array>
#include <cstdint>

#include "freestyle/errors.hpp"

namespace freestyle {

// Per-block round policy: the bounds the round count is drawn from and the
// hash-interval/complexity knobs that define checkpoint rounds.
struct round_params {
    std::uint32_t min_rounds;
    std::uint32_t max_rounds;
    std::uint32_t hash_interval;
    std::uint32_t hash_complexity;

    // Number of possible round counts: checkpoints min..max at steps of the interval.
    std::uint32_t num_round_choices() const {
        return (max_rounds - min_rounds) / hash_interval + 1;
    }

    void validate() const;
};

// Full negotiated parameter set; adds the pepper width to the round policy.
struct cipher_parameter {
    std::uint32_t min_rounds;
    std::uint32_t max_rounds;
    std::uint32_t hash_interval;
    std::uint32_t hash_complexity;
    std::uint32_t pepper_bits;

    round_params rounds() const {
        return {min_rounds, max_rounds, hash_interval, hash_complexity};
    }

    std::uint32_t num_round_choices() const { return rounds().num_round_choices(); }
    std::uint64_t pepper_space() const { return std::uint64_t(1) << pepper_bits; }

    // min_rounds(16) | max_rounds(16) | hash_interval(16) | hash_complexity(8) | pepper_bits(8),
    // most significant field first.
    std::uint64_t packed() const;

    // The two 32-bit words folded into the key words of the initial state:
    // (min_rounds<<16 | max_rounds) and (hash_interval<<16 | hash_complexity<<8 | pepper_bits).
    std::array<std::uint32_t, 2> halves() const;

    // Throws errc::invalid_parameter with a description of the first violated rule.
    void validate() const;

    // Wire layout: five little-endian fields, 8 bytes total.
    std::array<std::uint8_t, 8> encode() const;
    static cipher_parameter decode(const std::uint8_t bytes[8]);

    bool operator==(const cipher_parameter&) const = default;
};

} // namespace freestyle
