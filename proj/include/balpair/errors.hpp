#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balpair {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DegreeCapExceeded : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Numeric enclosures could not separate a root modulus from 1.
class Undecidable : public Error {
public:
    using Error::Error;
};

class NoExpandingFixedPoint : public Error {
public:
    NoExpandingFixedPoint() : Error("no letter seeds an expanding fixed point") {}
};

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

class InvalidLength : public Error {
public:
    using Error::Error;
};

class NotBalanced : public Error {
public:
    using Error::Error;
};

class ScanOverflow : public Error {
public:
    using Error::Error;
};

class StabilityNotReached : public Error {
public:
    using Error::Error;
};

class NotClosed : public Error {
public:
    using Error::Error;
};

class NotPrimitive : public Error {
public:
    NotPrimitive() : Error("substitution is not primitive") {}
};

class InvalidPrefix : public Error {
public:
    using Error::Error;
};

class EmptyConfig : public Error {
public:
    EmptyConfig() : Error("analysis configuration is empty") {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace balpair
