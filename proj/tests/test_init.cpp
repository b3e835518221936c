#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "freestyle/init.hpp"

using namespace freestyle;

namespace {

key_material test_km(std::uint8_t key_fill, std::uint8_t nonce_fill) {
    std::vector<std::uint8_t> key(32);
    std::vector<std::uint8_t> nonce(12);
    for (std::size_t i = 0; i < key.size(); ++i)
        key[i] = std::uint8_t(key_fill + i);
    for (std::size_t i = 0; i < nonce.size(); ++i)
        nonce[i] = std::uint8_t(nonce_fill + 3 * i);
    return make_key_material(key, nonce);
}

} // namespace

TEST_CASE("derive_random_words folds round counts base 25") {
    std::vector<std::uint32_t> v(28, 12);
    CHECK(derive_random_words(v) == random_words{0, 0, 0, 0});

    v[0] = 13; // least-significant digit
    CHECK(derive_random_words(v) == random_words{1, 0, 0, 0});

    std::vector<std::uint32_t> one{20};
    CHECK(derive_random_words(one) == random_words{8, 0, 0, 0});

    // 24 * 25^27 mod 2^128
    std::vector<std::uint32_t> last(28, 12);
    last[27] = 36;
    CHECK(derive_random_words(last) ==
          random_words{1013913304u, 2573427782u, 3856042473u, 3930679683u});

    std::vector<std::uint32_t> seq(28);
    for (std::size_t i = 0; i < seq.size(); ++i)
        seq[i] = std::uint32_t(12 + i % 25);
    CHECK(derive_random_words(seq) ==
          random_words{0xeb1f244fu, 0x89932b11u, 0x22893596u, 0x5542d606u});

    // All digits maxed: value mod 2^128 keeps only the low words.
    std::vector<std::uint32_t> all36(28, 36);
    CHECK(derive_random_words(all36) ==
          random_words{0xd4490d20u, 0xffc78873u, 0x0f6a24fdu, 0x140c7894u});
}

TEST_CASE("derive_random_words rejects out-of-range counts") {
    std::vector<std::uint32_t> v(28, 12);
    v[5] = 11;
    CHECK_THROWS_AS(derive_random_words(v), error);
    v[5] = 37;
    CHECK_THROWS_AS(derive_random_words(v), error);
}

TEST_CASE("receiver recovers the sender's pepper and random words") {
    const auto km = test_km(0x10, 0x40);
    const cipher_parameter cp{8, 32, 2, 2, 8};
    auto rng = random_source::seeded(900);
    for (int i = 0; i < 4; ++i) {
        auto s = init_sender(km, cp, rng);
        auto r = init_receiver(km, cp, s.tags);
        CHECK(r.rw == s.rw);
        CHECK(r.pepper == s.pepper);
        CHECK(r.offsets_scanned == std::uint64_t(s.pepper) + 1);
        CHECK(r.rounds_executed >= 28u * 12u);
    }
}

TEST_CASE("skewed peppers roundtrip the same way") {
    const auto km = test_km(0x21, 0x52);
    const cipher_parameter cp{8, 32, 2, 2, 8};
    auto rng = random_source::seeded(901);
    for (int i = 0; i < 4; ++i) {
        auto s = init_sender(km, cp, rng, 0.5);
        auto r = init_receiver(km, cp, s.tags);
        CHECK(r.rw == s.rw);
        CHECK(r.pepper == s.pepper);
    }
}

TEST_CASE("receiver scan cost is pepper + 1 offsets") {
    const auto km = test_km(0x33, 0x64);
    const cipher_parameter cp{8, 32, 2, 2, 8};
    auto rng = random_source::seeded(902);
    auto s = detail::init_sender_ex(km, cp, rng, std::nullopt, 5u, num_bootstrap_blocks);
    REQUIRE(s.pepper == 5u); // 28 tags make an accidental lower-offset hit ~2^-448
    init_hashes tags{};
    std::copy(s.tags.begin(), s.tags.end(), tags.begin());
    auto r = init_receiver(km, cp, tags);
    CHECK(r.pepper == 5u);
    CHECK(r.offsets_scanned == 6u);
    // Five failed offsets cost at least one aborted block each.
    CHECK(r.rounds_executed >= 28u * 12u + 5u * 12u);
}

TEST_CASE("wrong key exhausts the pepper space") {
    const auto km = test_km(0x44, 0x76);
    const cipher_parameter cp{8, 32, 2, 2, 8};
    auto rng = random_source::seeded(903);
    auto s = init_sender(km, cp, rng);

    auto bad = test_km(0x45, 0x76);
    try {
        init_receiver(bad, cp, s.tags);
        FAIL("expected wrong_key_error");
    } catch (const wrong_key_error& e) {
        CHECK(e.code() == errc::wrong_key);
        CHECK(e.offsets_scanned() == 256u);
        // Every offset ran at least one aborted bootstrap block.
        CHECK(e.rounds_executed() >= 256u * 12u);
    }
}

TEST_CASE("sender adopts a lower offset that satisfies all hashes") {
    // One bootstrap tag and a 16-bit pepper space: scanning below a forced
    // top-of-range pepper meets a colliding offset with high probability
    // (65535 tries at ~25/65536 each). The sender must then report the offset
    // the receiver will actually halt at, with matching random words.
    const auto km = test_km(0x55, 0x88);
    const cipher_parameter cp{8, 32, 2, 2, 16};
    auto rng = random_source::seeded(904);
    const std::uint32_t top = std::uint32_t(cp.pepper_space() - 1);

    bool adopted = false;
    for (int attempt = 0; attempt < 8 && !adopted; ++attempt) {
        auto s = detail::init_sender_ex(km, cp, rng, std::nullopt, top, 1);
        auto r = detail::init_receiver_span(km, cp, s.tags);
        CHECK(r.pepper == s.pepper);
        CHECK(r.rw == s.rw);
        if (s.pepper < top)
            adopted = true;
    }
    CHECK(adopted);
}

TEST_CASE("init validates the parameter set") {
    const auto km = test_km(0x66, 0x9a);
    auto rng = random_source::seeded(905);
    const cipher_parameter bad{8, 32, 3, 2, 8};
    CHECK_THROWS_AS(init_sender(km, bad, rng), error);
    CHECK_THROWS_AS(init_receiver(km, bad, init_hashes{}), error);
}
