#include "freestyle/stream.hpp"

#include <algorithm>
#include <cstring>

namespace freestyle {

namespace {

key_material with_nonce(const key_material& km, const std::array<std::uint8_t, 12>& nonce) {
    key_material out = km;
    for (std::size_t i = 0; i < 3; ++i)
        out.nonce[i] = detail::load_le32(nonce.data() + 4 * i);
    out.counter = 0;
    return out;
}

std::array<std::uint8_t, 12> nonce_bytes(const key_material& km) {
    std::array<std::uint8_t, 12> out;
    for (std::size_t i = 0; i < 3; ++i)
        detail::store_le32(out.data() + 4 * i, km.nonce[i]);
    return out;
}

} // namespace

session::session(const key_material& km, const cipher_parameter& cp)
    : km_(km), cp_(cp), table_(std::make_unique<collision_table>()) {
    cp_.validate();
}

sender_init session::begin(random_source& rng, std::optional<double> skew_q) {
    auto si = init_sender(km_, cp_, rng, skew_q);
    rw_ = si.rw;
    s0_ = build_initial_state(km_, cp_.packed(), rw_);
    counter_ = 0;
    ready_ = true;
    return si;
}

receiver_init session::accept(const init_hashes& tags) {
    auto ri = init_receiver(km_, cp_, tags);
    rw_ = ri.rw;
    s0_ = build_initial_state(km_, cp_.packed(), rw_);
    counter_ = 0;
    ready_ = true;
    return ri;
}

void session::check_block(std::size_t in, std::size_t out) const {
    if (!ready_)
        throw error(errc::invalid_parameter, "session not initialized");
    if (in == 0 || in > block_bytes || in != out)
        throw error(errc::invalid_parameter, "block must be 1..64 bytes, spans equal");
    if (counter_ > 0xffffffff)
        throw error(errc::counter_overflow, "block counter exceeded 2^32 - 1");
}

block_result session::encrypt_next(std::span<const std::uint8_t> plaintext,
                                   std::span<std::uint8_t> ciphertext,
                                   random_source& rng) {
    check_block(plaintext.size(), ciphertext.size());
    const auto br = encrypt_block(s0_, rw_, cp_.rounds(), std::uint32_t(counter_),
                                  plaintext, ciphertext, rng, *table_);
    ++counter_;
    return br;
}

decrypt_result session::decrypt_next(std::span<const std::uint8_t> ciphertext,
                                     std::span<std::uint8_t> plaintext,
                                     std::uint16_t tag) {
    check_block(ciphertext.size(), plaintext.size());
    const auto dr = decrypt_block(s0_, rw_, cp_.rounds(), std::uint32_t(counter_), tag,
                                  ciphertext, plaintext, *table_);
    if (dr.rounds == 0)
        throw error(errc::block_halt_failure,
                    "block " + std::to_string(counter_) + ": no round count matches the hash");
    ++counter_;
    return dr;
}

encrypted_message encrypt_message(const key_material& km, const cipher_parameter& cp,
                                  std::span<const std::uint8_t> plaintext,
                                  random_source& rng, std::optional<double> skew_q) {
    session sn(km, cp);
    encrypted_message msg;
    msg.params = cp;
    msg.nonce = nonce_bytes(km);
    msg.boot = sn.begin(rng, skew_q).tags;
    msg.ciphertext.resize(plaintext.size());

    std::size_t off = 0;
    while (off < plaintext.size()) {
        const std::size_t n = std::min(block_bytes, plaintext.size() - off);
        const auto br = sn.encrypt_next(plaintext.subspan(off, n),
                                        std::span(msg.ciphertext).subspan(off, n), rng);
        msg.block_tags.push_back(br.tag);
        off += n;
    }
    return msg;
}

std::vector<std::uint8_t> decrypt_message(const key_material& km,
                                          const encrypted_message& msg) {
    const std::size_t want_tags = (msg.ciphertext.size() + block_bytes - 1) / block_bytes;
    if (msg.block_tags.size() != want_tags)
        throw error(errc::malformed_frame, "block tag count does not match body length");

    session sn(with_nonce(km, msg.nonce), msg.params);
    sn.accept(msg.boot);

    std::vector<std::uint8_t> plaintext(msg.ciphertext.size());
    std::size_t off = 0;
    for (const std::uint16_t tag : msg.block_tags) {
        const std::size_t n = std::min(block_bytes, msg.ciphertext.size() - off);
        sn.decrypt_next(std::span(msg.ciphertext).subspan(off, n),
                        std::span(plaintext).subspan(off, n), tag);
        off += n;
    }
    return plaintext;
}

std::vector<std::uint8_t> serialize_message(const encrypted_message& msg) {
    std::vector<std::uint8_t> out;
    out.reserve(frame_header_bytes + msg.ciphertext.size() + 2 * msg.block_tags.size());
    out.insert(out.end(), frame_magic.begin(), frame_magic.end());
    out.push_back(frame_version);
    const auto params = msg.params.encode();
    out.insert(out.end(), params.begin(), params.end());
    out.insert(out.end(), msg.nonce.begin(), msg.nonce.end());
    for (const std::uint16_t t : msg.boot) {
        out.push_back(std::uint8_t(t));
        out.push_back(std::uint8_t(t >> 8));
    }
    std::size_t off = 0;
    for (const std::uint16_t t : msg.block_tags) {
        const std::size_t n = std::min(block_bytes, msg.ciphertext.size() - off);
        out.push_back(std::uint8_t(t));
        out.push_back(std::uint8_t(t >> 8));
        out.insert(out.end(), msg.ciphertext.begin() + std::ptrdiff_t(off),
                   msg.ciphertext.begin() + std::ptrdiff_t(off + n));
        off += n;
    }
    return out;
}

encrypted_message parse_message(std::span<const std::uint8_t> frame) {
    const auto malformed = [](const char* what) -> error {
        return error(errc::malformed_frame, what);
    };

    if (frame.size() < frame_header_bytes)
        throw malformed("frame shorter than the 81-byte header");
    if (!std::equal(frame_magic.begin(), frame_magic.end(), frame.begin()))
        throw malformed("bad magic");
    if (frame[4] != frame_version)
        throw malformed("unsupported version");

    encrypted_message msg;
    msg.params = cipher_parameter::decode(frame.data() + 5);
    try {
        msg.params.validate();
    } catch (const error&) {
        throw malformed("invalid parameter field in header");
    }
    std::copy_n(frame.begin() + 13, 12, msg.nonce.begin());
    for (std::size_t i = 0; i < num_bootstrap_blocks; ++i)
        msg.boot[i] = std::uint16_t(frame[25 + 2 * i] | frame[26 + 2 * i] << 8);

    std::size_t off = frame_header_bytes;
    while (off < frame.size()) {
        if (frame.size() - off < 3)
            throw malformed("trailing block tag without a body");
        const std::uint16_t tag = std::uint16_t(frame[off] | frame[off + 1] << 8);
        off += 2;
        const std::size_t n = std::min(block_bytes, frame.size() - off);
        msg.block_tags.push_back(tag);
        msg.ciphertext.insert(msg.ciphertext.end(), frame.begin() + std::ptrdiff_t(off),
                              frame.begin() + std::ptrdiff_t(off + n));
        off += n;
    }
    return msg;
}

} // namespace freestyle
