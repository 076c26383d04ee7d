#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sofft {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. offset is a byte offset into the parsed string.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A derivation was asked for something its inputs cannot support.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Unbound symbol, division by zero or a domain error during numeric evaluation.
class EvalError : public Error {
public:
    using Error::Error;
};

} // namespace sofft
