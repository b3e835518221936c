#include "freestyle/block.hpp"

namespace freestyle {

namespace {

void xor_keystream(const cipher_state& initial, const cipher_state& final_state,
                   std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
    const auto ks = keystream(initial, final_state);
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = in[i] ^ ks[i];
}

} // namespace

block_result encrypt_block(const cipher_state& s0, const random_words& rw,
                           const round_params& rp, std::uint32_t counter,
                           std::span<const std::uint8_t> plaintext,
                           std::span<std::uint8_t> ciphertext, random_source& rng,
                           collision_table& table,
                           std::vector<std::uint16_t>* tag_trace) {
    const std::uint32_t r_target =
        rp.min_rounds + rp.hash_interval * rng.uniform(0, rp.num_round_choices() - 1);

    table.reset();
    cipher_state initial = s0;
    initial[12] = counter ^ rw[3];
    cipher_state s = initial;

    std::uint16_t prev = 0;
    std::uint32_t checkpoints = 0;
    for (std::uint32_t r = 1; r <= r_target; ++r) {
        apply_round(s, r);
        if (r >= rp.min_rounds && r % rp.hash_interval == 0) {
            std::uint16_t h = compute_hash(s, r, rw, prev, rp.hash_complexity);
            h = table.probe(h);
            table.set(h);
            prev = h;
            ++checkpoints;
            if (tag_trace)
                tag_trace->push_back(h);
        }
    }

    xor_keystream(initial, s, plaintext, ciphertext);
    return {r_target, prev, checkpoints};
}

decrypt_result decrypt_block(const cipher_state& s0, const random_words& rw,
                             const round_params& rp, std::uint32_t counter,
                             std::uint16_t expected,
                             std::span<const std::uint8_t> ciphertext,
                             std::span<std::uint8_t> plaintext, collision_table& table) {
    table.reset();
    cipher_state initial = s0;
    initial[12] = counter ^ rw[3];
    cipher_state s = initial;

    std::uint16_t prev = 0;
    std::uint32_t checkpoints = 0;
    for (std::uint32_t r = 1; r <= rp.max_rounds; ++r) {
        apply_round(s, r);
        if (r >= rp.min_rounds && r % rp.hash_interval == 0) {
            std::uint16_t h = compute_hash(s, r, rw, prev, rp.hash_complexity);
            h = table.probe(h);
            ++checkpoints;
            if (h == expected) {
                xor_keystream(initial, s, ciphertext, plaintext);
                return {r, checkpoints};
            }
            table.set(h);
            prev = h;
        }
    }
    return {0, checkpoints};
}

} // namespace freestyle
