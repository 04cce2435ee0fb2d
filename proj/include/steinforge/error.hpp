#pragma once

#include <stdexcept>
#include <string>

namespace steinforge {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed records, mismatched spaces (dimension or block count), bad flags.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configured enumeration or size bound would be exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// The operation was called outside its domain, e.g. on incomparable vertices.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace steinforge
