#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "freestyle/analysis.hpp"
#include "freestyle/kdf.hpp"
#include "freestyle/stream.hpp"

namespace fs = std::filesystem;
using namespace freestyle;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_wrong_key = 2;
constexpr int exit_malformed = 3;
constexpr int exit_bad_params = 4;
constexpr int exit_entropy = 5;

int exit_code_for(const error& e) {
    switch (e.code()) {
    case errc::wrong_key:
        return exit_wrong_key;
    case errc::malformed_frame:
    case errc::block_halt_failure:
        return exit_malformed;
    case errc::invalid_parameter:
    case errc::counter_overflow:
        return exit_bad_params;
    case errc::entropy_failure:
        return exit_entropy;
    }
    return 1;
}

std::vector<std::uint8_t> parse_hex(const std::string& s) {
    if (s.size() % 2 != 0)
        throw error(errc::invalid_parameter, "hex string must have even length");
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto nibble = [&](char c) -> std::uint8_t {
            if (c >= '0' && c <= '9') return std::uint8_t(c - '0');
            if (c >= 'a' && c <= 'f') return std::uint8_t(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return std::uint8_t(c - 'A' + 10);
            throw error(errc::invalid_parameter, "invalid hex digit");
        };
        out[i] = std::uint8_t(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (const auto b : bytes) {
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    return s;
}

std::size_t read_full(std::istream& in, std::uint8_t* p, std::size_t n) {
    std::size_t got = 0;
    while (got < n && in) {
        in.read(reinterpret_cast<char*>(p) + got, std::streamsize(n - got));
        const std::size_t k = std::size_t(in.gcount());
        if (k == 0)
            break;
        got += k;
    }
    return got;
}

// Opens path for reading, "-" meaning stdin.
class input_source {
public:
    explicit input_source(const std::string& path) {
        if (path == "-")
            return;
        file_.open(path, std::ios::binary);
        if (!file_)
            throw error(errc::invalid_parameter, "cannot open input: " + path);
    }
    std::istream& stream() { return file_.is_open() ? file_ : std::cin; }

private:
    std::ifstream file_;
};

// Failure-safe output: files are written to a .part sibling and renamed on
// commit; stdout is either buffered until commit (decrypt must never leak
// partial plaintext) or streamed directly (encrypt).
class output_sink {
public:
    output_sink(const std::string& path, bool buffer_stdout)
        : to_stdout_(path == "-"), buffered_(buffer_stdout) {
        if (!to_stdout_) {
            final_path_ = path;
            part_path_ = path + ".part";
            file_.open(part_path_, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw error(errc::invalid_parameter, "cannot open output: " + path);
        }
    }

    ~output_sink() {
        if (!committed_ && !to_stdout_) {
            file_.close();
            std::error_code ec;
            fs::remove(part_path_, ec);
        }
    }

    void write(std::span<const std::uint8_t> bytes) {
        if (to_stdout_) {
            if (buffered_)
                pending_.insert(pending_.end(), bytes.begin(), bytes.end());
            else
                std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                                std::streamsize(bytes.size()));
        } else {
            file_.write(reinterpret_cast<const char*>(bytes.data()),
                        std::streamsize(bytes.size()));
            if (!file_)
                throw error(errc::entropy_failure, "write failed: " + part_path_);
        }
    }

    void commit() {
        if (to_stdout_) {
            if (buffered_)
                std::cout.write(reinterpret_cast<const char*>(pending_.data()),
                                std::streamsize(pending_.size()));
            std::cout.flush();
        } else {
            file_.close();
            fs::rename(part_path_, final_path_);
        }
        committed_ = true;
    }

private:
    bool to_stdout_;
    bool buffered_;
    bool committed_ = false;
    std::string final_path_;
    std::string part_path_;
    std::ofstream file_;
    std::vector<std::uint8_t> pending_;
};

struct key_options {
    std::string hex;
    std::string file;
    std::string passphrase;

    void add_to(CLI::App* cmd) {
        auto* a = cmd->add_option("--key", hex, "key as 32 or 64 hex digits");
        auto* b = cmd->add_option("--key-file", file, "file holding a raw 16- or 32-byte key");
        auto* c = cmd->add_option("--passphrase", passphrase,
                                  "passphrase, stretched to 256 bits with PBKDF2-HMAC-SHA256");
        a->excludes(b)->excludes(c);
        b->excludes(c);
    }

    bool has_passphrase() const { return !passphrase.empty(); }

    // Resolves the key bytes; the nonce only matters for passphrases.
    std::vector<std::uint8_t> resolve(std::span<const std::uint8_t> nonce) const {
        if (!hex.empty()) {
            auto key = parse_hex(hex);
            if (key.size() != 16 && key.size() != 32)
                throw error(errc::invalid_parameter, "--key must decode to 16 or 32 bytes");
            return key;
        }
        if (!file.empty()) {
            std::ifstream f(file, std::ios::binary);
            if (!f)
                throw error(errc::invalid_parameter, "cannot open key file: " + file);
            std::vector<std::uint8_t> key((std::istreambuf_iterator<char>(f)),
                                          std::istreambuf_iterator<char>());
            if ((key.size() == 17 || key.size() == 33) && key.back() == '\n')
                key.pop_back();
            if (key.size() != 16 && key.size() != 32)
                throw error(errc::invalid_parameter, "key file must hold 16 or 32 raw bytes");
            return key;
        }
        if (!passphrase.empty()) {
            const auto key = derive_key(passphrase, nonce);
            return {key.begin(), key.end()};
        }
        throw error(errc::invalid_parameter,
                    "one of --key, --key-file, or --passphrase is required");
    }
};

struct param_options {
    std::uint32_t rmin = 8;
    std::uint32_t rmax = 32;
    std::uint32_t hi = 2;
    std::uint32_t hc = 2;
    std::uint32_t ic = 20;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--rmin", rmin, "minimum rounds per block");
        cmd->add_option("--rmax", rmax, "maximum rounds per block");
        cmd->add_option("--hi", hi, "hash interval (checkpoint spacing in rounds)");
        cmd->add_option("--hc", hc, "hash complexity: 1, 2, or 3");
        cmd->add_option("--ic", ic, "pepper width in bits (8..32)");
    }

    cipher_parameter to_params() const {
        const cipher_parameter cp{rmin, rmax, hi, hc, ic};
        cp.validate();
        if ((cp.max_rounds - cp.min_rounds) / cp.hash_interval < 3)
            std::cerr << "warning: fewer than 4 round choices per block weakens"
                         " ciphertext randomization\n";
        if (cp.min_rounds < 8)
            std::cerr << "warning: min rounds below 8 weakens the keystream\n";
        if (cp.pepper_bits < 20)
            std::cerr << "warning: pepper width below 20 bits gives a small"
                         " key-guessing penalty\n";
        return cp;
    }
};

random_source make_rng(std::optional<std::uint64_t> seed, bool allow_insecure,
                       bool for_encryption) {
    if (!seed) {
        if (const char* env = std::getenv("FREESTYLE_TEST_SEED")) {
            seed = std::strtoull(env, nullptr, 0);
            allow_insecure = true;
            std::cerr << "warning: FREESTYLE_TEST_SEED set; using a deterministic"
                         " generator\n";
        }
    }
    if (!seed)
        return random_source::system();
    if (for_encryption && !allow_insecure)
        throw error(errc::invalid_parameter,
                    "--seed makes encryption deterministic; pass --insecure-seed to"
                    " confirm");
    return random_source::seeded(*seed);
}

int cmd_encrypt(const std::string& in_path, const std::string& out_path,
                const key_options& key, const param_options& params,
                std::optional<std::uint64_t> seed, bool insecure_seed,
                std::optional<double> skew_q) {
    const cipher_parameter cp = params.to_params();
    if (skew_q && !(*skew_q > 0.0 && *skew_q < 1.0))
        throw error(errc::invalid_parameter, "--skew-q must be in (0, 1)");

    std::cerr << "warning: output is not authenticated; pair it with a MAC if"
                 " integrity matters\n";

    random_source rng = make_rng(seed, insecure_seed, true);
    std::array<std::uint8_t, 12> nonce;
    rng.fill(nonce);

    const auto key_bytes = key.resolve(nonce);
    const key_material km = make_key_material(key_bytes, nonce);

    input_source input(in_path);
    output_sink sink(out_path, false);

    session sn(km, cp);
    const sender_init si = sn.begin(rng, skew_q);

    std::vector<std::uint8_t> header;
    header.insert(header.end(), frame_magic.begin(), frame_magic.end());
    header.push_back(frame_version);
    const auto enc = cp.encode();
    header.insert(header.end(), enc.begin(), enc.end());
    header.insert(header.end(), nonce.begin(), nonce.end());
    for (const std::uint16_t t : si.tags) {
        header.push_back(std::uint8_t(t));
        header.push_back(std::uint8_t(t >> 8));
    }
    sink.write(header);

    std::array<std::uint8_t, block_bytes> inbuf, outbuf;
    for (;;) {
        const std::size_t got = read_full(input.stream(), inbuf.data(), block_bytes);
        if (got == 0)
            break;
        const auto br = sn.encrypt_next(std::span(inbuf).first(got),
                                        std::span(outbuf).first(got), rng);
        const std::uint8_t tag[2] = {std::uint8_t(br.tag), std::uint8_t(br.tag >> 8)};
        sink.write(tag);
        sink.write(std::span(outbuf).first(got));
        if (got < block_bytes)
            break;
    }
    sink.commit();
    return exit_ok;
}

struct parsed_header {
    cipher_parameter params;
    std::array<std::uint8_t, 12> nonce;
    init_hashes boot;
};

parsed_header read_header(std::istream& in) {
    std::array<std::uint8_t, frame_header_bytes> raw;
    if (read_full(in, raw.data(), raw.size()) != raw.size())
        throw error(errc::malformed_frame, "frame shorter than the 81-byte header");
    // Delegate field checks to the frame parser on a header-only message.
    const auto msg = parse_message(raw);
    return {msg.params, msg.nonce, msg.boot};
}

int cmd_decrypt(const std::string& in_path, const std::string& out_path,
                const key_options& key) {
    input_source input(in_path);
    auto& in = input.stream();
    const parsed_header hdr = read_header(in);

    const auto key_bytes = key.resolve(hdr.nonce);
    const key_material km = make_key_material(key_bytes, hdr.nonce);

    output_sink sink(out_path, true);
    session sn(km, hdr.params);
    sn.accept(hdr.boot);

    std::array<std::uint8_t, block_bytes> inbuf, outbuf;
    for (;;) {
        std::uint8_t tag_bytes[2];
        const std::size_t tag_got = read_full(in, tag_bytes, 2);
        if (tag_got == 0)
            break;
        if (tag_got == 1)
            throw error(errc::malformed_frame, "truncated block tag");
        const auto tag = std::uint16_t(tag_bytes[0] | tag_bytes[1] << 8);
        const std::size_t body = read_full(in, inbuf.data(), block_bytes);
        if (body == 0)
            throw error(errc::malformed_frame, "block tag without a body");
        sn.decrypt_next(std::span(inbuf).first(body), std::span(outbuf).first(body), tag);
        sink.write(std::span(outbuf).first(body));
        if (body < block_bytes) {
            std::uint8_t extra;
            if (read_full(in, &extra, 1) != 0)
                throw error(errc::malformed_frame, "data after the final short block");
            break;
        }
    }
    sink.commit();
    return exit_ok;
}

int cmd_inspect(const std::string& in_path, bool as_json, bool all_blocks) {
    input_source input(in_path);
    auto& in = input.stream();
    const parsed_header hdr = read_header(in);

    struct block_entry {
        std::uint16_t tag;
        std::size_t bytes;
    };
    std::vector<block_entry> blocks;
    std::uint64_t payload = 0;

    std::array<std::uint8_t, block_bytes> buf;
    for (;;) {
        std::uint8_t tag_bytes[2];
        const std::size_t tag_got = read_full(in, tag_bytes, 2);
        if (tag_got == 0)
            break;
        if (tag_got == 1)
            throw error(errc::malformed_frame, "truncated block tag");
        const auto tag = std::uint16_t(tag_bytes[0] | tag_bytes[1] << 8);
        const std::size_t body = read_full(in, buf.data(), block_bytes);
        if (body == 0)
            throw error(errc::malformed_frame, "block tag without a body");
        blocks.push_back({tag, body});
        payload += body;
        if (body < block_bytes) {
            std::uint8_t extra;
            if (read_full(in, &extra, 1) != 0)
                throw error(errc::malformed_frame, "data after the final short block");
            break;
        }
    }

    const auto& p = hdr.params;
    if (as_json) {
        nlohmann::json j;
        j["version"] = frame_version;
        j["params"] = {{"min_rounds", p.min_rounds},
                       {"max_rounds", p.max_rounds},
                       {"hash_interval", p.hash_interval},
                       {"hash_complexity", p.hash_complexity},
                       {"pepper_bits", p.pepper_bits}};
        j["nonce"] = to_hex(hdr.nonce);
        j["bootstrap_hashes"] = hdr.boot;
        j["block_count"] = blocks.size();
        j["payload_bytes"] = payload;
        auto& list = j["blocks"] = nlohmann::json::array();
        for (const auto& b : blocks)
            list.push_back({{"tag", b.tag}, {"bytes", b.bytes}});
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }

    std::printf("version:        %u\n", frame_version);
    std::printf("parameters:     rounds %u..%u, interval %u, complexity %u, pepper bits %u\n",
                p.min_rounds, p.max_rounds, p.hash_interval, p.hash_complexity,
                p.pepper_bits);
    std::printf("nonce:          %s\n", to_hex(hdr.nonce).c_str());
    std::printf("bootstrap:     ");
    for (std::size_t i = 0; i < hdr.boot.size(); ++i)
        std::printf("%s%04x", i % 14 == 0 && i ? "\n                " : " ", hdr.boot[i]);
    std::printf("\n");
    std::printf("blocks:         %zu (%llu payload bytes)\n", blocks.size(),
                static_cast<unsigned long long>(payload));
    const std::size_t shown = all_blocks ? blocks.size() : std::min<std::size_t>(8, blocks.size());
    for (std::size_t i = 0; i < shown; ++i)
        std::printf("  block %-6zu tag %04x  %zu bytes\n", i, blocks[i].tag,
                    blocks[i].bytes);
    if (shown < blocks.size())
        std::printf("  ... %zu more (use --all)\n", blocks.size() - shown);
    return exit_ok;
}

int cmd_kgp(std::uint32_t ic, std::optional<double> e_pepper, double e_r,
            std::uint64_t n_b, bool as_json) {
    const double ep = e_pepper ? *e_pepper : std::ldexp(1.0, int(ic) - 1);
    const double value = analysis::kgp({ic, ep, e_r, n_b});
    const double threshold = analysis::kgp_pepper_threshold(ic, e_r, n_b);
    const double e_rw = analysis::expected_rounds_wrong();
    if (as_json) {
        nlohmann::json j{{"pepper_bits", ic},
                         {"e_pepper", ep},
                         {"e_r", e_r},
                         {"n_b", n_b},
                         {"kgp", value},
                         {"e_pepper_threshold_for_kgp_above_1", threshold},
                         {"expected_rounds_wrong", e_rw}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("pepper bits:            %u\n", ic);
        std::printf("expected pepper:        %.1f\n", ep);
        std::printf("expected rounds/block:  %.1f\n", e_r);
        std::printf("message blocks:         %llu\n", static_cast<unsigned long long>(n_b));
        std::printf("wrong-key rounds/offset: %.6f\n", e_rw);
        std::printf("key-guessing penalty:   %.6f\n", value);
        std::printf("kgp > 1 while expected pepper < %.1f\n", threshold);
    }
    return exit_ok;
}

int cmd_params(std::uint32_t a, std::uint32_t b, bool as_json) {
    const auto space = analysis::param_space_count(a, b);
    const std::string lit = space.literal.str();
    const std::string enu = space.enumerated.str();
    if (as_json) {
        nlohmann::json j{{"a", a},
                         {"b", b},
                         {"closed_form", lit},
                         {"enumerated", enu},
                         {"agree", space.agree()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("round-bound guesses in [%u, %u]\n", a, b);
        std::printf("closed-form sum:     %s\n", lit.c_str());
        std::printf("direct enumeration:  %s\n", enu.c_str());
        if (!space.agree())
            std::printf("note: the closed form overcounts; the enumeration is the"
                        " number of distinct parameter tuples\n");
    }
    return exit_ok;
}

int cmd_bench(std::size_t buffer_bytes, std::optional<std::uint64_t> seed, bool as_json) {
    random_source rng = seed ? random_source::seeded(*seed) : random_source::system();
    const auto grid = analysis::default_bench_grid();
    const auto report = analysis::run_bench(grid, buffer_bytes, rng);
    std::cout << (as_json ? analysis::bench_records(report)
                          : analysis::bench_table(report));
    return exit_ok;
}

int cmd_selftest() {
    int failures = 0;
    const auto check = [&](const char* name, bool ok) {
        std::printf("%s: %s\n", ok ? "ok" : "FAIL", name);
        if (!ok)
            ++failures;
    };

    random_source rng = random_source::seeded(0x5e1f7e57);

    // Keystream equals ChaCha20 when every randomization input is zeroed.
    {
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            std::array<std::uint8_t, 32> key;
            std::array<std::uint8_t, 12> nonce;
            rng.fill(key);
            rng.fill(nonce);
            const auto counter = std::uint32_t(rng.next_u64());
            const key_material km = make_key_material(key, nonce, counter);
            cipher_state s = build_initial_state(km, std::uint64_t(0), random_words{});
            const cipher_state s0 = s;
            for (std::uint32_t r = 1; r <= 20; ++r)
                apply_round(s, r);
            ok = keystream(s0, s) == analysis::chacha20_block(key, nonce, counter);
        }
        check("chacha20 degeneracy (100 random states)", ok);
    }

    // Round trips across sizes and two parameter sets.
    {
        bool ok = true;
        const cipher_parameter grid[] = {{8, 32, 2, 2, 8}, {12, 36, 1, 3, 8}};
        for (const auto& cp : grid) {
            for (const std::size_t size : {std::size_t(0), std::size_t(1), std::size_t(63),
                                           std::size_t(64), std::size_t(65),
                                           std::size_t(4096)}) {
                std::array<std::uint8_t, 32> key;
                std::array<std::uint8_t, 12> nonce;
                rng.fill(key);
                rng.fill(nonce);
                const key_material km = make_key_material(key, nonce);
                std::vector<std::uint8_t> pt(size);
                rng.fill(pt);
                const auto msg = encrypt_message(km, cp, pt, rng);
                const auto frame = serialize_message(msg);
                const auto back = decrypt_message(km, parse_message(frame));
                if (back != pt) {
                    ok = false;
                    break;
                }
            }
        }
        check("encrypt/decrypt round trip", ok);
    }

    // Analytical wrong-key rounds value.
    {
        const double v = analysis::expected_rounds_wrong();
        check("expected wrong-key rounds near 36.0095", v > 36.0085 && v < 36.0105);
    }

    // Wrong keys must be rejected by the pepper scan.
    {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            std::array<std::uint8_t, 32> key;
            std::array<std::uint8_t, 12> nonce;
            rng.fill(key);
            rng.fill(nonce);
            const key_material km = make_key_material(key, nonce);
            const cipher_parameter cp{8, 32, 2, 2, 8};
            std::vector<std::uint8_t> pt(100);
            rng.fill(pt);
            const auto msg = encrypt_message(km, cp, pt, rng);
            rng.fill(key);
            const key_material wrong = make_key_material(key, nonce);
            try {
                decrypt_message(wrong, msg);
                ok = false;
            } catch (const wrong_key_error&) {
            }
        }
        check("wrong-key rejection", ok);
    }

    if (failures) {
        std::printf("%d self-test(s) failed\n", failures);
        return 1;
    }
    std::printf("all self-tests passed\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"freestyle: a randomized, variable-round stream cipher"};
    app.require_subcommand(1);

    std::string in_path = "-";
    std::string out_path = "-";
    key_options key;
    param_options params;
    std::optional<std::uint64_t> seed;
    bool insecure_seed = false;
    std::optional<double> skew_q;
    bool as_json = false;
    bool all_blocks = false;

    auto* enc = app.add_subcommand("encrypt", "encrypt a file or stream");
    enc->add_option("input", in_path, "input path, - for stdin");
    enc->add_option("--out", out_path, "output path, - for stdout");
    key.add_to(enc);
    params.add_to(enc);
    enc->add_option("--seed", seed, "deterministic randomness (testing only)");
    enc->add_flag("--insecure-seed", insecure_seed,
                  "confirm that a seeded encryption is intentional");
    enc->add_option("--skew-q", skew_q,
                    "right-skewed pepper distribution parameter in (0,1)");

    auto* dec = app.add_subcommand("decrypt", "decrypt a file or stream");
    dec->add_option("input", in_path, "input path, - for stdin");
    dec->add_option("--out", out_path, "output path, - for stdout");
    key.add_to(dec);

    auto* ins = app.add_subcommand("inspect", "dump frame structure (no key needed)");
    ins->add_option("input", in_path, "input path, - for stdin");
    ins->add_flag("--json", as_json, "machine-readable output");
    ins->add_flag("--all", all_blocks, "list every block");

    std::uint32_t kgp_ic = 20;
    std::optional<double> kgp_epepper;
    double kgp_er = 20.0;
    std::uint64_t kgp_nb = 1;
    auto* kgp_cmd = app.add_subcommand("kgp", "key-guessing-penalty calculator");
    kgp_cmd->add_option("--ic", kgp_ic, "pepper width in bits")->required();
    kgp_cmd->add_option("--e-pepper", kgp_epepper,
                        "expected pepper (default: uniform, 2^(ic-1))");
    kgp_cmd->add_option("--e-r", kgp_er, "expected rounds per message block");
    kgp_cmd->add_option("--nb", kgp_nb, "message length in blocks");
    kgp_cmd->add_flag("--json", as_json, "machine-readable output");

    std::vector<std::uint32_t> guess;
    auto* params_cmd = app.add_subcommand("params", "count guessable parameter tuples");
    params_cmd->add_option("--guess", guess, "round-bound guess range: A B")
        ->expected(2)
        ->required();
    params_cmd->add_flag("--json", as_json, "machine-readable output");

    std::size_t bench_bytes = 262144;
    auto* bench_cmd = app.add_subcommand("bench", "throughput against chacha20");
    bench_cmd->add_option("--size", bench_bytes, "buffer size in bytes");
    bench_cmd->add_option("--seed", seed, "deterministic randomness");
    bench_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* self_cmd = app.add_subcommand("selftest", "quick built-in checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (enc->parsed())
            return cmd_encrypt(in_path, out_path, key, params, seed, insecure_seed,
                               skew_q);
        if (dec->parsed())
            return cmd_decrypt(in_path, out_path, key);
        if (ins->parsed())
            return cmd_inspect(in_path, as_json, all_blocks);
        if (kgp_cmd->parsed())
            return cmd_kgp(kgp_ic, kgp_epepper, kgp_er, kgp_nb, as_json);
        if (params_cmd->parsed())
            return cmd_params(guess[0], guess[1], as_json);
        if (bench_cmd->parsed())
            return cmd_bench(bench_bytes, seed, as_json);
        if (self_cmd->parsed())
            return cmd_selftest();
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
