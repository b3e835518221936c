#include "freestyle/core.hpp"

namespace freestyle {

key_material make_key_material(std::span<const std::uint8_t> key,
                               std::span<const std::uint8_t> nonce,
                               std::uint32_t counter) {
    if (key.size() != 16 && key.size() != 32)
        throw error(errc::invalid_parameter, "key must be 16 or 32 bytes");
    if (nonce.size() != 12)
        throw error(errc::invalid_parameter, "nonce must be 12 bytes");

    key_material km{};
    for (std::size_t i = 0; i < 8; ++i)
        km.key[i] = detail::load_le32(key.data() + 4 * (i % (key.size() / 4)));
    for (std::size_t i = 0; i < 3; ++i)
        km.nonce[i] = detail::load_le32(nonce.data() + 4 * i);
    km.counter = counter;
    return km;
}

cipher_state build_initial_state(const key_material& km, std::uint64_t packed_params,
                                 const random_words& rw) {
    cipher_state s;
    s[0] = sigma[0] ^ rw[0];
    s[1] = sigma[1] ^ rw[1];
    s[2] = sigma[2] ^ rw[2];
    s[3] = sigma[3];
    s[4] = km.key[0] ^ std::uint32_t(packed_params >> 32);
    s[5] = km.key[1] ^ std::uint32_t(packed_params);
    for (std::size_t i = 2; i < 8; ++i)
        s[4 + i] = km.key[i];
    s[12] = km.counter ^ rw[3];
    s[13] = km.nonce[0];
    s[14] = km.nonce[1];
    s[15] = km.nonce[2];
    return s;
}

cipher_state build_initial_state(const key_material& km, const cipher_parameter& cp,
                                 const random_words& rw) {
    cp.validate();
    return build_initial_state(km, cp.packed(), rw);
}

std::array<std::uint8_t, block_bytes> keystream(const cipher_state& initial,
                                                const cipher_state& final_state) {
    std::array<std::uint8_t, block_bytes> out;
    for (std::size_t i = 0; i < 16; ++i)
        detail::store_le32(out.data() + 4 * i, final_state[i] + initial[i]);
    return out;
}

} // namespace freestyle
