#pragma once

#include <stdexcept>
#include <string>

namespace pilegame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation was violated by its arguments.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation of a rational function at one of its poles.
class PoleError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// Not enough sequence terms to attempt a fit of the requested order.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// A computation that is guaranteed to succeed by theory did not.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace pilegame
