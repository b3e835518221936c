#pragma once

#include <array>
#include <cstdint>

#include "freestyle/core.hpp"

namespace freestyle {

// 16-bit halting digest of (round, leading state rows, random words, previous
// tag). hash_complexity selects how many 128-bit state rows are absorbed:
// rows 0..h_c, i.e. all 16 words at h_c = 3. ARX only; h_c + 2 quarter-rounds.
inline std::uint16_t compute_hash(const cipher_state& s, std::uint32_t r,
                                  const random_words& rw, std::uint16_t prev,
                                  std::uint32_t h_c) {
    std::uint32_t t0 = rw[0] + r;
    std::uint32_t t1 = rw[1] + prev;
    std::uint32_t t2 = rw[2];
    std::uint32_t t3 = rw[3];
    for (std::uint32_t k = 0; k <= h_c; ++k) {
        t0 ^= s[4 * k];
        t1 ^= s[4 * k + 1];
        t2 ^= s[4 * k + 2];
        t3 ^= s[4 * k + 3];
        quarter_round(t0, t1, t2, t3);
    }
    quarter_round(t0, t1, t2, t3);
    std::uint32_t x = t0 ^ t1 ^ t2 ^ t3;
    return std::uint16_t((x & 0xffff) ^ (x >> 16));
}

// Tracks which tag values a block operation has already emitted. Epoch
// stamping makes reset O(1): an entry is set iff its stamp equals the current
// epoch. Single-owner, one block operation at a time.
class collision_table {
public:
    collision_table() { stamps_.fill(0); }

    void reset() {
        if (++epoch_ == 0) {
            stamps_.fill(0);
            epoch_ = 1;
        }
    }

    bool test(std::uint16_t tag) const { return stamps_[tag] == epoch_; }
    void set(std::uint16_t tag) { stamps_[tag] = epoch_; }

    // First free tag value at or after `tag`, wrapping mod 2^16. Does not set
    // the flag. The table is never full: a block sets far fewer than 2^16 tags.
    std::uint16_t probe(std::uint16_t tag) const {
        while (test(tag))
            ++tag;
        return tag;
    }

private:
    std::array<std::uint16_t, 65536> stamps_;
    std::uint16_t epoch_ = 1;
};

} // namespace freestyle
