#include "freestyle/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "freestyle/block.hpp"
#include "freestyle/init.hpp"

namespace freestyle::analysis {

namespace {

constexpr std::uint32_t boot_min = 12;
constexpr std::uint32_t boot_max = 36;
constexpr std::uint32_t boot_interval = 1;
constexpr std::uint32_t boot_choices = 25;
constexpr std::uint32_t boot_blocks = 28;
constexpr double tag_space = 65536.0;

} // namespace

double pr_collision(std::uint32_t n) {
    if (n < 1 || n > 65536)
        throw error(errc::invalid_parameter, "trial index must be in [1, 2^16]");
    if (n == 1)
        return 1.0 / tag_space;
    double prod = 1.0;
    for (std::uint32_t i = 0; i + 2 <= n; ++i)
        prod *= (tag_space - i - 1) / (tag_space - i);
    return prod / (tag_space - n + 1);
}

double expected_rounds_wrong(double (*pr)(std::uint32_t)) {
    long double p_any = 0.0L;
    long double matched = 0.0L;
    for (std::uint32_t n = 1; n <= boot_choices; ++n) {
        const long double p = pr(n);
        p_any += p;
        matched += (boot_min + n * boot_interval) * p;
    }
    const long double per_block = matched + boot_max * (1.0L - p_any);
    long double sum = 0.0L;
    long double weight = 1.0L;
    for (std::uint32_t h = 1; h <= boot_blocks; ++h) {
        sum += weight * per_block;
        weight *= p_any;
    }
    return double(sum);
}

double expected_rounds_wrong() { return expected_rounds_wrong(&pr_collision); }

double simulated_rounds_wrong(std::size_t offsets, random_source& rng) {
    std::uint64_t total = 0;
    for (std::size_t o = 0; o < offsets; ++o) {
        for (std::uint32_t block = 0; block < boot_blocks; ++block) {
            const std::uint32_t expected = rng.uniform(0, 65535);
            std::uint32_t matched_at = 0;
            for (std::uint32_t n = 1; n <= boot_choices; ++n) {
                if (rng.uniform(0, 65535) == expected) {
                    matched_at = n;
                    break;
                }
            }
            if (matched_at == 0) {
                total += boot_max;
                break;
            }
            // checkpoint n sits at round boot_min + (n - 1) * boot_interval
            total += boot_min + (matched_at - 1) * boot_interval;
        }
    }
    return double(total) / double(offsets);
}

double kgp(const kgp_inputs& in) {
    if (in.pepper_bits < 1 || in.pepper_bits > 32)
        throw error(errc::invalid_parameter, "pepper_bits must be in [1, 32]");
    if (!(in.e_pepper >= 0.0) || !(in.e_r > 0.0))
        throw error(errc::invalid_parameter, "expected pepper/rounds must be non-negative");
    static const double e_rw = expected_rounds_wrong();
    const double adversary = std::ldexp(1.0, int(in.pepper_bits)) * e_rw;
    const double genuine =
        in.e_pepper * e_rw + double(boot_blocks) * 24.0 + double(in.n_b) * in.e_r;
    return adversary / genuine;
}

double kgp_pepper_threshold(std::uint32_t pepper_bits, double e_r, std::uint64_t n_b) {
    static const double e_rw = expected_rounds_wrong();
    return std::ldexp(1.0, int(pepper_bits)) -
           (double(boot_blocks) * 24.0 + double(n_b) * e_r) / e_rw;
}

big_int num_ciphertexts(const cipher_parameter& cp, std::uint64_t n_b) {
    cp.validate();
    big_int result = big_int(1) << 128;
    big_int base = cp.num_round_choices();
    std::uint64_t e = n_b;
    while (e != 0) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::uint64_t round_pair_count(std::uint32_t a, std::uint32_t b, std::uint32_t h_i) {
    if (a > b || h_i == 0)
        throw error(errc::invalid_parameter, "need a <= b and a nonzero interval");
    const std::uint64_t k = (b - a) / h_i;
    return (k + 1) * (k + 2) / 2;
}

param_space param_space_count(std::uint32_t a, std::uint32_t b) {
    if (a < 1 || a > b || b > 0xffff)
        throw error(errc::invalid_parameter, "need 1 <= a <= b <= 65535");
    param_space out;
    for (std::uint32_t n = a; n <= b; ++n) {
        for (std::uint32_t m = n; m <= b; ++m) {
            std::uint32_t common = 0;
            for (std::uint32_t h = 1; h <= n; ++h) {
                if (n % h == 0 && m % h == 0) {
                    ++common;
                    const std::uint64_t k = (std::uint64_t(m) - n) / h;
                    out.literal += big_int(75) * (k + 1) * (k + 2) / 2;
                }
            }
            // 3 hash-complexity levels x 25 pepper widths per (bounds, interval)
            out.enumerated += big_int(75) * common;
        }
    }
    return out;
}

double bandwidth_overhead(std::uint64_t message_bits) {
    if (message_bits == 0)
        throw error(errc::invalid_parameter, "message must be non-empty");
    const std::uint64_t n_b = (message_bits + 511) / 512;
    return double(16 * n_b + 512) * 100.0 / double(message_bits);
}

namespace {

void cc_round_pair(std::uint32_t x[16]) {
    const auto qr = [&x](int a, int b, int c, int d) {
        x[a] += x[b]; x[d] ^= x[a]; x[d] = std::rotl(x[d], 16);
        x[c] += x[d]; x[b] ^= x[c]; x[b] = std::rotl(x[b], 12);
        x[a] += x[b]; x[d] ^= x[a]; x[d] = std::rotl(x[d], 8);
        x[c] += x[d]; x[b] ^= x[c]; x[b] = std::rotl(x[b], 7);
    };
    qr(0, 4, 8, 12);
    qr(1, 5, 9, 13);
    qr(2, 6, 10, 14);
    qr(3, 7, 11, 15);
    qr(0, 5, 10, 15);
    qr(1, 6, 11, 12);
    qr(2, 7, 8, 13);
    qr(3, 4, 9, 14);
}

} // namespace

std::array<std::uint8_t, 64> chacha20_block(std::span<const std::uint8_t> key,
                                            std::span<const std::uint8_t> nonce,
                                            std::uint32_t counter) {
    if (key.size() != 32 || nonce.size() != 12)
        throw error(errc::invalid_parameter, "key must be 32 bytes, nonce 12");

    std::uint32_t init[16];
    init[0] = 0x61707865;
    init[1] = 0x3320646e;
    init[2] = 0x79622d32;
    init[3] = 0x6b206574;
    for (int i = 0; i < 8; ++i)
        init[4 + i] = detail::load_le32(key.data() + 4 * i);
    init[12] = counter;
    for (int i = 0; i < 3; ++i)
        init[13 + i] = detail::load_le32(nonce.data() + 4 * i);

    std::uint32_t x[16];
    std::copy(std::begin(init), std::end(init), std::begin(x));
    for (int i = 0; i < 10; ++i)
        cc_round_pair(x);

    std::array<std::uint8_t, 64> out;
    for (int i = 0; i < 16; ++i)
        detail::store_le32(out.data() + 4 * i, x[i] + init[i]);
    return out;
}

namespace {

template <class F>
double timed_pass(F&& f, std::size_t bytes_per_call) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    std::size_t calls = 0;
    double elapsed = 0.0;
    do {
        f();
        ++calls;
        elapsed = std::chrono::duration<double>(clock::now() - t0).count();
    } while (elapsed < 0.1);
    return double(bytes_per_call) * double(calls) / elapsed / 1e6;
}

} // namespace

std::vector<bench_config> default_bench_grid() {
    std::vector<bench_config> grid;
    for (std::uint32_t h_i : {1u, 2u})
        for (std::uint32_t h_c : {1u, 2u, 3u})
            grid.push_back({h_i, h_c});
    return grid;
}

bench_report run_bench(std::span<const bench_config> configs, std::size_t buffer_bytes,
                       random_source& rng) {
    bench_report report;
    report.buffer_bytes = buffer_bytes;

    std::vector<std::uint8_t> in(buffer_bytes);
    std::vector<std::uint8_t> out(buffer_bytes);
    rng.fill(in);

    std::array<std::uint8_t, 32> key;
    std::array<std::uint8_t, 12> nonce;
    rng.fill(key);
    rng.fill(nonce);

    std::uint32_t chacha_counter = 0;
    const auto chacha_pass = [&] {
        for (std::size_t off = 0; off < buffer_bytes; off += 64) {
            const auto ks = chacha20_block(key, nonce, chacha_counter++);
            const std::size_t n = std::min<std::size_t>(64, buffer_bytes - off);
            for (std::size_t i = 0; i < n; ++i)
                out[off + i] = in[off + i] ^ ks[i];
        }
    };

    struct lane {
        bench_config cfg{};
        cipher_parameter cp{};
        cipher_state s0{};
        random_words rw{};
        std::unique_ptr<collision_table> table;
        std::uint32_t counter = 0;
        double best = 0.0;
    };

    const key_material km = make_key_material(key, nonce);
    std::vector<lane> lanes;
    for (const auto& cfg : configs) {
        lane l;
        l.cfg = cfg;
        l.cp = cipher_parameter{8, 32, cfg.hash_interval, cfg.hash_complexity, 8};
        l.cp.validate();
        for (auto& w : l.rw)
            w = std::uint32_t(rng.next_u64());
        l.s0 = build_initial_state(km, l.cp.packed(), l.rw);
        l.table = std::make_unique<collision_table>();
        lanes.push_back(std::move(l));
    }

    const auto freestyle_pass = [&](lane& l) {
        for (std::size_t off = 0; off < buffer_bytes; off += 64) {
            const std::size_t n = std::min<std::size_t>(64, buffer_bytes - off);
            encrypt_block(l.s0, l.rw, l.cp.rounds(), l.counter++,
                          std::span(in).subspan(off, n),
                          std::span(out).subspan(off, n), rng, *l.table);
        }
    };

    // Warm caches and the branch predictor, then interleave the timed passes
    // round-robin and keep the best of each lane: interference from a shared
    // machine only ever slows a pass down, so the maximum is the estimator
    // least disturbed by it, and interleaving keeps a slow spell from landing
    // entirely on one configuration.
    chacha_pass();
    for (auto& l : lanes)
        freestyle_pass(l);

    double chacha_best = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
        chacha_best = std::max(chacha_best, timed_pass(chacha_pass, buffer_bytes));
        for (auto& l : lanes)
            l.best = std::max(l.best,
                              timed_pass([&] { freestyle_pass(l); }, buffer_bytes));
    }
    report.chacha_mbps = chacha_best;
    for (auto& l : lanes)
        report.rows.push_back({l.cfg, l.best, chacha_best / l.best});
    return report;
}

std::string bench_table(const bench_report& report) {
    std::string s;
    char line[128];
    std::snprintf(line, sizeof line, "buffer: %zu bytes\n", report.buffer_bytes);
    s += line;
    std::snprintf(line, sizeof line, "%-10s %4s %4s %10s %10s\n", "cipher", "h_i", "h_c",
                  "MB/s", "slowdown");
    s += line;
    std::snprintf(line, sizeof line, "%-10s %4s %4s %10.1f %10s\n", "chacha20", "-", "-",
                  report.chacha_mbps, "1.00x");
    s += line;
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof line, "%-10s %4u %4u %10.1f %9.2fx\n", "freestyle",
                      row.cfg.hash_interval, row.cfg.hash_complexity, row.mbps,
                      row.slowdown);
        s += line;
    }
    return s;
}

std::string bench_records(const bench_report& report) {
    std::string s;
    nlohmann::json base{{"cipher", "chacha20"},
                        {"buffer_bytes", report.buffer_bytes},
                        {"mbps", report.chacha_mbps}};
    s += base.dump() + "\n";
    for (const auto& row : report.rows) {
        nlohmann::json j{{"cipher", "freestyle"},
                         {"buffer_bytes", report.buffer_bytes},
                         {"hash_interval", row.cfg.hash_interval},
                         {"hash_complexity", row.cfg.hash_complexity},
                         {"mbps", row.mbps},
                         {"slowdown", row.slowdown}};
        s += j.dump() + "\n";
    }
    return s;
}

empirical_kgp_result empirical_kgp(std::uint32_t pepper_bits, std::uint32_t e_r,
                                   std::uint64_t n_b, std::size_t trials,
                                   random_source& rng,
                                   std::optional<std::uint32_t> forced_pepper) {
    if (pepper_bits > 16)
        throw error(errc::invalid_parameter, "empirical runs need pepper_bits <= 16");
    if (e_r < 8 || e_r > 0x7fff)
        throw error(errc::invalid_parameter, "e_r must be in [8, 32767]");
    if (trials == 0 || n_b == 0)
        throw error(errc::invalid_parameter, "need at least one trial and one block");

    const cipher_parameter cp{8, 2 * e_r - 8, 1, 3, pepper_bits};
    cp.validate();
    const std::uint32_t pepper_top = std::uint32_t(cp.pepper_space() - 1);

    using clock = std::chrono::steady_clock;
    std::uint64_t rounds_correct = 0;
    std::uint64_t rounds_wrong = 0;
    double secs_correct = 0.0;
    double secs_wrong = 0.0;

    std::array<std::uint8_t, 32> key;
    std::array<std::uint8_t, 12> nonce;
    std::vector<std::uint8_t> zeros(n_b * block_bytes, 0);
    std::vector<std::uint8_t> ct(zeros.size());
    std::vector<std::uint8_t> pt(zeros.size());
    std::vector<std::uint16_t> tags(n_b);
    auto table = std::make_unique<collision_table>();
    std::uint32_t paired_draw = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        rng.fill(key);
        rng.fill(nonce);
        const key_material km = make_key_material(key, nonce);

        std::uint32_t pepper;
        if (forced_pepper)
            pepper = *forced_pepper;
        else if (t % 2 == 0)
            pepper = paired_draw = rng.uniform(0, pepper_top);
        else
            pepper = pepper_top - paired_draw;

        const auto si = detail::init_sender_ex(km, cp, rng, std::nullopt, pepper,
                                               num_bootstrap_blocks);
        init_hashes boot{};
        std::copy(si.tags.begin(), si.tags.end(), boot.begin());

        const cipher_state s0 = build_initial_state(km, cp.packed(), si.rw);
        for (std::uint64_t b = 0; b < n_b; ++b) {
            const auto span_in = std::span(zeros).subspan(b * block_bytes, block_bytes);
            const auto span_out = std::span(ct).subspan(b * block_bytes, block_bytes);
            tags[b] = encrypt_block(s0, si.rw, cp.rounds(), std::uint32_t(b), span_in,
                                    span_out, rng, *table)
                          .tag;
        }

        const auto t0 = clock::now();
        const auto ri = init_receiver(km, cp, boot);
        std::uint64_t rc = ri.rounds_executed;
        const cipher_state s0r = build_initial_state(km, cp.packed(), ri.rw);
        for (std::uint64_t b = 0; b < n_b; ++b) {
            const auto span_ct = std::span(ct).subspan(b * block_bytes, block_bytes);
            const auto span_pt = std::span(pt).subspan(b * block_bytes, block_bytes);
            const auto dr = decrypt_block(s0r, ri.rw, cp.rounds(), std::uint32_t(b),
                                          tags[b], span_ct, span_pt, *table);
            rc += dr.rounds ? dr.rounds : cp.max_rounds;
        }
        secs_correct += std::chrono::duration<double>(clock::now() - t0).count();
        rounds_correct += rc;

        rng.fill(key);
        const key_material km_wrong = make_key_material(key, nonce);
        const auto t1 = clock::now();
        try {
            init_receiver(km_wrong, cp, boot);
        } catch (const wrong_key_error& e) {
            rounds_wrong += e.rounds_executed();
        }
        secs_wrong += std::chrono::duration<double>(clock::now() - t1).count();
    }

    empirical_kgp_result r;
    r.trials = trials;
    const double e_pepper = forced_pepper ? double(*forced_pepper)
                                          : std::ldexp(1.0, int(pepper_bits) - 1);
    r.predicted = kgp({pepper_bits, e_pepper, double(e_r), n_b});
    r.mean_rounds_wrong = double(rounds_wrong) / double(trials);
    r.mean_rounds_correct = double(rounds_correct) / double(trials);
    r.rounds_ratio = r.mean_rounds_wrong / r.mean_rounds_correct;
    r.time_ratio = secs_wrong / secs_correct;
    return r;
}

std::string empirical_kgp_table(const empirical_kgp_result& r) {
    std::string s;
    char line[96];
    std::snprintf(line, sizeof line, "trials:              %zu\n", r.trials);
    s += line;
    std::snprintf(line, sizeof line, "predicted kgp:       %.4f\n", r.predicted);
    s += line;
    std::snprintf(line, sizeof line, "rounds ratio:        %.4f\n", r.rounds_ratio);
    s += line;
    std::snprintf(line, sizeof line, "time ratio:          %.4f\n", r.time_ratio);
    s += line;
    std::snprintf(line, sizeof line, "mean rounds wrong:   %.1f\n", r.mean_rounds_wrong);
    s += line;
    std::snprintf(line, sizeof line, "mean rounds correct: %.1f\n", r.mean_rounds_correct);
    s += line;
    return s;
}

std::string empirical_kgp_records(const empirical_kgp_result& r) {
    nlohmann::json j{{"trials", r.trials},
                     {"predicted_kgp", r.predicted},
                     {"rounds_ratio", r.rounds_ratio},
                     {"time_ratio", r.time_ratio},
                     {"mean_rounds_wrong", r.mean_rounds_wrong},
                     {"mean_rounds_correct", r.mean_rounds_correct}};
    return j.dump() + "\n";
}

} // namespace freestyle::analysis
