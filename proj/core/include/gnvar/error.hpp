#pragma once

#include <stdexcept>
#include <string>

namespace gnvar {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression parse failure; carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& msg)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation-time failures: unbound constants, division by a zero-valued
// jet, singular tetrads, insufficient jet order.
class EvalError : public Error {
public:
    using Error::Error;
};

// Scenario file problems (missing keys, malformed values).
class ScenarioError : public Error {
public:
    using Error::Error;
};

} // namespace gnvar
