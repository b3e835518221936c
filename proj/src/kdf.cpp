#include "freestyle/kdf.hpp"

#include <openssl/evp.h>
#include <vector>

#include "freestyle/errors.hpp"

namespace freestyle {

std::array<std::uint8_t, 32> derive_key(std::string_view passphrase,
                                        std::span<const std::uint8_t> nonce) {
    static constexpr std::string_view domain = "FSTY/kdf/v1";
    std::vector<std::uint8_t> salt(domain.begin(), domain.end());
    salt.insert(salt.end(), nonce.begin(), nonce.end());

    std::array<std::uint8_t, 32> key;
    const int ok = PKCS5_PBKDF2_HMAC(passphrase.data(), int(passphrase.size()),
                                     salt.data(), int(salt.size()), int(kdf_iterations),
                                     EVP_sha256(), int(key.size()), key.data());
    if (ok != 1)
        throw error(errc::entropy_failure, "PBKDF2 key derivation failed");
    return key;
}

} // namespace freestyle
