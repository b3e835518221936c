#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace freestyle {

enum class errc {
    invalid_parameter,
    malformed_frame,
    wrong_key,
    block_halt_failure,
    entropy_failure,
    counter_overflow,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

// Thrown when a receiver exhausts the pepper space without matching the
// bootstrap hashes; carries how much work the scan performed.
class wrong_key_error : public error {
public:
    wrong_key_error(const std::string& what, std::uint64_t offsets_scanned,
                    std::uint64_t rounds_executed)
        : error(errc::wrong_key, what),
          offsets_scanned_(offsets_scanned),
          rounds_executed_(rounds_executed) {}

    std::uint64_t offsets_scanned() const { return offsets_scanned_; }
    std::uint64_t rounds_executed() const { return rounds_executed_; }

private:
    std::uint64_t offsets_scanned_;
    std::uint64_t rounds_executed_;
};

} // namespace freestyle
