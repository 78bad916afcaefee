#pragma once

#include <stdexcept>
#include <string>

namespace curveann {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A fixed-point value left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A build exceeded the key budget it was given.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace curveann
