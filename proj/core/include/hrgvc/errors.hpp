#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrgvc {

/// Raised when a caller violates an operation's precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when model or analysis parameters fall outside their domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hrgvc
