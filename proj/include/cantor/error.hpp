#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cantor {

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Oracle enumeration would exceed the configured guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cantor
