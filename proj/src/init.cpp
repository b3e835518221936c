#include "freestyle/init.hpp"

#include <algorithm>
#include <memory>

namespace freestyle {

random_words derive_random_words(std::span<const std::uint32_t> rounds) {
    __uint128_t v = 0;
    for (std::size_t i = rounds.size(); i-- > 0;) {
        const std::uint32_t r = rounds[i];
        if (r < 12 || r > 36)
            throw error(errc::invalid_parameter, "bootstrap round count out of [12, 36]");
        v = v * 25 + (r - 12);
    }
    random_words rw;
    for (std::size_t j = 0; j < 4; ++j)
        rw[j] = std::uint32_t(v >> (32 * j));
    return rw;
}

namespace detail {

scan_result scan_bootstrap(const cipher_state& s0_base,
                           std::span<const std::uint16_t> tags,
                           std::uint64_t max_offsets) {
    constexpr random_words no_rw{};
    auto table = std::make_unique<collision_table>();
    scan_result res;
    res.rounds.reserve(tags.size());

    for (std::uint64_t offset = 0; offset < max_offsets; ++offset) {
        cipher_state s = s0_base;
        s[3] = s0_base[3] + std::uint32_t(offset);
        res.rounds.clear();
        bool ok = true;
        for (std::size_t i = 0; i < tags.size(); ++i) {
            const auto dr = decrypt_block(s, no_rw, bootstrap_params,
                                          std::uint32_t(i), tags[i], {}, {}, *table);
            res.rounds_executed += dr.rounds ? dr.rounds : bootstrap_max_rounds;
            if (dr.rounds == 0) {
                ok = false;
                break;
            }
            res.rounds.push_back(dr.rounds);
        }
        ++res.offsets_scanned;
        if (ok) {
            res.found = true;
            res.offset = std::uint32_t(offset);
            return res;
        }
    }
    res.rounds.clear();
    return res;
}

sender_init_ex init_sender_ex(const key_material& km, const cipher_parameter& cp,
                              random_source& rng, std::optional<double> skew_q,
                              std::optional<std::uint32_t> forced_pepper,
                              std::size_t boot_count) {
    cp.validate();
    constexpr random_words no_rw{};

    std::uint32_t pepper;
    if (forced_pepper)
        pepper = *forced_pepper;
    else if (skew_q)
        pepper = skewed_pepper(rng, cp.pepper_bits, *skew_q);
    else
        pepper = rng.uniform(0, std::uint32_t(cp.pepper_space() - 1));
    if (std::uint64_t(pepper) >= cp.pepper_space())
        throw error(errc::invalid_parameter, "pepper outside [0, 2^pepper_bits)");

    const cipher_state s0_base = build_initial_state(km, cp.packed(), no_rw);
    cipher_state s0 = s0_base;
    s0[3] = s0_base[3] + pepper;

    sender_init_ex out;
    out.tags.resize(boot_count);
    std::vector<std::uint32_t> rounds(boot_count);
    out.rounds_executed = 0;

    auto table = std::make_unique<collision_table>();
    for (std::size_t i = 0; i < boot_count; ++i) {
        const auto br =
            encrypt_block(s0, no_rw, bootstrap_params, std::uint32_t(i), {}, {}, rng, *table);
        out.tags[i] = br.tag;
        rounds[i] = br.rounds;
        out.rounds_executed += br.rounds;
    }

    // A lower offset can also satisfy every hash; the receiver halts there
    // first, so adopt that offset's recovered round counts as our own.
    const auto scan = scan_bootstrap(s0_base, out.tags, pepper);
    out.rounds_executed += scan.rounds_executed;
    if (scan.found) {
        rounds = scan.rounds;
        out.pepper = scan.offset;
    } else {
        out.pepper = pepper;
    }

    out.rw = derive_random_words(rounds);
    return out;
}

receiver_init init_receiver_span(const key_material& km, const cipher_parameter& cp,
                                 std::span<const std::uint16_t> tags) {
    cp.validate();
    constexpr random_words no_rw{};
    const cipher_state s0_base = build_initial_state(km, cp.packed(), no_rw);

    const auto scan = scan_bootstrap(s0_base, tags, cp.pepper_space());
    if (!scan.found)
        throw wrong_key_error("no pepper offset satisfies the bootstrap hashes",
                              scan.offsets_scanned, scan.rounds_executed);

    receiver_init out;
    out.rw = derive_random_words(scan.rounds);
    out.pepper = scan.offset;
    out.offsets_scanned = scan.offsets_scanned;
    out.rounds_executed = scan.rounds_executed;
    return out;
}

} // namespace detail

sender_init init_sender(const key_material& km, const cipher_parameter& cp,
                        random_source& rng, std::optional<double> skew_q) {
    auto ex = detail::init_sender_ex(km, cp, rng, skew_q, std::nullopt,
                                     num_bootstrap_blocks);
    sender_init out;
    std::copy(ex.tags.begin(), ex.tags.end(), out.tags.begin());
    out.rw = ex.rw;
    out.pepper = ex.pepper;
    out.rounds_executed = ex.rounds_executed;
    return out;
}

receiver_init init_receiver(const key_material& km, const cipher_parameter& cp,
                            const init_hashes& tags) {
    return detail::init_receiver_span(km, cp, tags);
}

} // namespace freestyle
