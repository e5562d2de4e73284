#pragma once

#include <stdexcept>
#include <string>

namespace picardkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Coordinate length or model mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A bilinear pairing was requested on a model that has none.
class UnsupportedPairingError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of arguments to a multilinear form.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A parameter (rank, number of factors, variable index) is outside its range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An input class does not satisfy the defining equations an operation needs.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Fixed-width integer arithmetic would wrap.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON documents, rational strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace picardkit
