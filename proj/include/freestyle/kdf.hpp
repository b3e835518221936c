#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace freestyle {

inline constexpr std::uint32_t kdf_iterations = 600000;

// Stretches a passphrase to a 256-bit key: PBKDF2-HMAC-SHA256 with
// kdf_iterations and salt "FSTY/kdf/v1" || nonce. The nonce travels in the
// frame header, so the receiver can re-derive the same key.
std::array<std::uint8_t, 32> derive_key(std::string_view passphrase,
                                        std::span<const std::uint8_t> nonce);

} // namespace freestyle
