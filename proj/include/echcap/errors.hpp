#pragma once

#include <stdexcept>
#include <string>

namespace echcap {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// An input violates the documented precondition of an operation
// (out-of-range L, invalid profile, degenerate orbit, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A cross-check between two independent computations disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A spectrum could not be extended to the requested index.
class UnavailableError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace echcap
