#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freestyle/entropy.hpp"
#include "freestyle/parameter.hpp"

namespace freestyle::analysis {

using big_int = boost::multiprecision::cpp_int;

// Probability that the n-th candidate round of a wrong-key decryption matches
// the expected hash, given the n-1 earlier candidates missed. Telescopes to
// 1/2^16 for every n. n must be in [1, 2^16].
double pr_collision(std::uint32_t n);

// Expected rounds a wrong key (or wrong pepper offset) executes during
// initialization: a 28-term geometrically weighted sum of the per-block
// matched-round expectation plus the max-rounds miss term, evaluated at the
// bootstrap configuration (min 12, max 36, interval 1, 25 choices).
double expected_rounds_wrong();

// Same sum with a caller-supplied per-trial collision probability; forcing it
// to zero degenerates to exactly 36 (every block runs to max rounds).
double expected_rounds_wrong(double (*pr)(std::uint32_t n));

// Monte-Carlo counterpart: simulates wrong-key offsets drawing uniform 16-bit
// tags and returns the mean rounds executed per offset.
double simulated_rounds_wrong(std::size_t offsets, random_source& rng);

struct kgp_inputs {
    std::uint32_t pepper_bits;
    double e_pepper; // expected pepper of the sender's (secret) distribution
    double e_r;      // expected rounds per message block
    std::uint64_t n_b;
};

// Key-guessing penalty: adversary initialization work over the genuine user's
// initialization + bootstrap + message work.
double kgp(const kgp_inputs& in);

// Largest expected pepper that still keeps kgp above 1.
double kgp_pepper_threshold(std::uint32_t pepper_bits, double e_r, std::uint64_t n_b);

// Exact count of ciphertexts one (key, nonce, plaintext) can map to:
// 2^128 random-word values times round choices per block to the n_b-th power.
big_int num_ciphertexts(const cipher_parameter& cp, std::uint64_t n_b);

// (min_rounds, max_rounds) guesses in [a, b] at a given hash interval:
// (k + 1)(k + 2) / 2 with k = (b - a) / h_i.
std::uint64_t round_pair_count(std::uint32_t a, std::uint32_t b, std::uint32_t h_i);

struct param_space {
    big_int literal;    // the closed-form sum as printed
    big_int enumerated; // direct count of distinct parameter tuples
    bool agree() const { return literal == enumerated; }
};

// Counts guessable (min_rounds, max_rounds, h_i, h_c, pepper_bits) tuples with
// both round bounds in [a, b], h_i a common factor of the bounds, three h_c
// values and 25 pepper widths. The closed form and the enumeration disagree;
// both are returned so reports can flag the discrepancy.
param_space param_space_count(std::uint32_t a, std::uint32_t b);

// Frame expansion over the raw message, in percent: one 16-bit tag per
// 512-bit block plus 512 bits of bootstrap material. message_bits must be > 0.
double bandwidth_overhead(std::uint64_t message_bits);

// Self-contained ChaCha20 keystream block (32-bit counter, 96-bit nonce);
// does not reuse the Freestyle round engine. key is 32 bytes, nonce 12.
std::array<std::uint8_t, 64> chacha20_block(std::span<const std::uint8_t> key,
                                            std::span<const std::uint8_t> nonce,
                                            std::uint32_t counter);

struct bench_config {
    std::uint32_t hash_interval;
    std::uint32_t hash_complexity;
};

struct bench_row {
    bench_config cfg;
    double mbps;
    double slowdown; // ChaCha20 throughput divided by this row's throughput
};

struct bench_report {
    std::size_t buffer_bytes;
    double chacha_mbps;
    std::vector<bench_row> rows;
};

std::vector<bench_config> default_bench_grid(); // h_i in {1,2} x h_c in {1,2,3}

// Message-phase throughput (initialization excluded) at round bounds 8..32,
// against the ChaCha20 baseline on the same buffer.
bench_report run_bench(std::span<const bench_config> configs, std::size_t buffer_bytes,
                       random_source& rng);

std::string bench_table(const bench_report& report);
std::string bench_records(const bench_report& report); // one JSON object per line

struct empirical_kgp_result {
    double predicted;    // analytical kgp for the pepper policy used
    double rounds_ratio; // mean wrong-key rounds / mean correct-key rounds
    double time_ratio;
    double mean_rounds_wrong;
    double mean_rounds_correct;
    std::size_t trials;
};

// Measures the key-guessing penalty: per trial, one correct-key decryption
// (init scan + n_b blocks) and one wrong-key attempt (always a full scan).
// Peppers alternate u, 2^bits-1-u so the sample mean sits at the uniform
// expectation; forced_pepper pins every trial instead (ratio < 1 at the top
// of the range). pepper_bits must be at most 16.
empirical_kgp_result empirical_kgp(std::uint32_t pepper_bits, std::uint32_t e_r,
                                   std::uint64_t n_b, std::size_t trials,
                                   random_source& rng,
                                   std::optional<std::uint32_t> forced_pepper = std::nullopt);

std::string empirical_kgp_table(const empirical_kgp_result& r);
std::string empirical_kgp_records(const empirical_kgp_result& r);

} // namespace freestyle::analysis
