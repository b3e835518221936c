#include "freestyle/parameter.hpp"

namespace freestyle {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw error(errc::invalid_parameter, msg);
}

void check_rounds(std::uint32_t min_rounds, std::uint32_t max_rounds,
                  std::uint32_t hash_interval, std::uint32_t hash_complexity) {
    if (min_rounds < 1 || min_rounds > 0xffff)
        fail("min_rounds must be in [1, 65535]");
    if (max_rounds < min_rounds || max_rounds > 0xffff)
        fail("max_rounds must be in [min_rounds, 65535]");
    if (hash_interval < 1 || hash_interval > min_rounds)
        fail("hash_interval must be in [1, min_rounds]");
    if (min_rounds % hash_interval != 0 || max_rounds % hash_interval != 0)
        fail("hash_interval must divide both min_rounds and max_rounds");
    if (hash_complexity < 1 || hash_complexity > 3)
        fail("hash_complexity must be 1, 2, or 3");
}

} // namespace

void round_params::validate() const {
    check_rounds(min_rounds, max_rounds, hash_interval, hash_complexity);
}

void cipher_parameter::validate() const {
    check_rounds(min_rounds, max_rounds, hash_interval, hash_complexity);
    if (pepper_bits < 8 || pepper_bits > 32)
        fail("pepper_bits must be in [8, 32]");
}

std::uint64_t cipher_parameter::packed() const {
    return std::uint64_t(min_rounds) << 48 | std::uint64_t(max_rounds) << 32 |
           std::uint64_t(hash_interval) << 16 | std::uint64_t(hash_complexity) << 8 |
           std::uint64_t(pepper_bits);
}

std::array<std::uint32_t, 2> cipher_parameter::halves() const {
    return {min_rounds << 16 | max_rounds,
            hash_interval << 16 | hash_complexity << 8 | pepper_bits};
}

std::array<std::uint8_t, 8> cipher_parameter::encode() const {
    std::array<std::uint8_t, 8> out{};
    out[0] = std::uint8_t(min_rounds);
    out[1] = std::uint8_t(min_rounds >> 8);
    out[2] = std::uint8_t(max_rounds);
    out[3] = std::uint8_t(max_rounds >> 8);
    out[4] = std::uint8_t(hash_interval);
    out[5] = std::uint8_t(hash_interval >> 8);
    out[6] = std::uint8_t(hash_complexity);
    out[7] = std::uint8_t(pepper_bits);
    return out;
}

cipher_parameter cipher_parameter::decode(const std::uint8_t bytes[8]) {
    cipher_parameter cp{};
    cp.min_rounds = bytes[0] | std::uint32_t(bytes[1]) << 8;
    cp.max_rounds = bytes[2] | std::uint32_t(bytes[3]) << 8;
    cp.hash_interval = bytes[4] | std::uint32_t(bytes[5]) << 8;
    cp.hash_complexity = bytes[6];
    cp.pepper_bits = bytes[7];
    return cp;
}

} // namespace freestyle
