#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates an operation's precondition (bad vertex id, probability
/// outside [0,1], malformed edge list, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A text instance could not be parsed. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// An exhaustive routine refused to run because the instance exceeds the
/// configured limit.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace rcap
