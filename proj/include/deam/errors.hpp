#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace deam {

// Bad or inconsistent experiment/config input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File-level failures: missing paths, malformed binary/CSV payloads.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loss blew past the guard or optimizer state went non-finite.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, std::int64_t step)
        : std::runtime_error(msg), step_(step) {}

    std::int64_t step() const { return step_; }

private:
    std::int64_t step_;
};

// A reproduction or verification assertion did not hold.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace deam
