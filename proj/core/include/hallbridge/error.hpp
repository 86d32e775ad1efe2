#pragma once

#include <stdexcept>
#include <string>

namespace hallbridge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was not met by its arguments.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A cross-check between two computation routes disagreed. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input (quiver files, keys, cache records).
class FormatError : public Error {
 public:
  using Error::Error;
};

class ZeroDivisor : public Error {
 public:
  ZeroDivisor() : Error("zero divisor") {}
};

}  // namespace hallbridge
