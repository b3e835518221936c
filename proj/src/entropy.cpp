#include "freestyle/entropy.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <sys/random.h>

namespace freestyle {

random_source::random_source(bool seeded, std::uint64_t seed)
    : seeded_(seeded), gen_(seed), pos_(buf_.size()) {}

void random_source::fill(std::span<std::uint8_t> out) {
    if (seeded_) {
        for (auto& b : out)
            b = std::uint8_t(gen_());
        return;
    }
    while (!out.empty()) {
        ssize_t n = ::getrandom(out.data(), out.size(), 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw error(errc::entropy_failure,
                        std::string("getrandom: ") + std::strerror(errno));
        }
        out = out.subspan(std::size_t(n));
    }
}

std::uint64_t random_source::next_u64() {
    if (seeded_)
        return gen_();
    if (pos_ + 8 > buf_.size()) {
        fill(buf_);
        pos_ = 0;
    }
    std::uint64_t v;
    std::memcpy(&v, buf_.data() + pos_, 8);
    pos_ += 8;
    return v;
}

std::uint32_t random_source::uniform(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t range = std::uint64_t(hi) - lo + 1;
    // 2^64 mod range; draws at or above 2^64 - rem would bias the reduction.
    const std::uint64_t rem = (UINT64_MAX % range + 1) % range;
    std::uint64_t v = next_u64();
    while (rem != 0 && v >= std::uint64_t(0) - rem)
        v = next_u64();
    return lo + std::uint32_t(v % range);
}

std::uint32_t skewed_pepper(random_source& src, std::uint32_t pepper_bits, double q) {
    if (pepper_bits < 8 || pepper_bits > 32)
        throw error(errc::invalid_parameter, "pepper_bits must be in [8, 32]");
    if (!(q > 0.0 && q < 1.0))
        throw error(errc::invalid_parameter, "skew q must be in (0, 1)");

    const double n = std::ldexp(1.0, int(pepper_bits));
    // Inverse CDF of the truncated geometric: F(p) = (1 - q^(p+1)) / (1 - q^n).
    const double z = -std::expm1(n * std::log(q)); // 1 - q^n
    const double u = src.next_unit();
    double p = std::floor(std::log1p(-u * z) / std::log(q));
    if (p < 0.0)
        p = 0.0;
    if (p >= n)
        p = n - 1.0;
    return std::uint32_t(p);
}

} // namespace freestyle
