#pragma once

#include <stdexcept>
#include <string>

namespace leeyang {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variable-count or vector-length mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the variable/degree/term caps.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition failed (pole of a map, degree excess, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed interchange data.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace leeyang
