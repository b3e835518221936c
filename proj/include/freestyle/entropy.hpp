#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>

#include "freestyle/errors.hpp"

namespace freestyle {

// Single-owner randomness handle. System mode reads OS entropy; seeded mode
// is a deterministic PRNG for tests, benchmarks, and golden files only.
class random_source {
public:
    static random_source system() { return random_source(false, 0); }
    static random_source seeded(std::uint64_t seed) { return random_source(true, seed); }

    random_source(const random_source&) = delete;
    random_source& operator=(const random_source&) = delete;
    random_source(random_source&&) = default;
    random_source& operator=(random_source&&) = default;

    bool is_seeded() const { return seeded_; }

    std::uint64_t next_u64();
    void fill(std::span<std::uint8_t> out);

    // Unbiased integer in [lo, hi] via rejection sampling.
    std::uint32_t uniform(std::uint32_t lo, std::uint32_t hi);

    // Double in [0, 1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
    random_source(bool seeded, std::uint64_t seed);

    bool seeded_;
    std::mt19937_64 gen_;
    std::array<std::uint8_t, 4096> buf_{};
    std::size_t pos_;
};

// Right-skewed pepper draw: truncated geometric over [0, 2^pepper_bits) with
// Pr(p) proportional to q^p. q is never serialized; q near 1 approaches the
// uniform distribution.
std::uint32_t skewed_pepper(random_source& src, std::uint32_t pepper_bits, double q);

} // namespace freestyle
