#pragma once

#include <stdexcept>

namespace lcr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No bounded trajectory found within the retry budget.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Analytic inverse evaluated at a point where it is undefined.
class SingularInputError : public Error {
 public:
  using Error::Error;
};

/// Series too short for the requested embedding.
class InsufficientLengthError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcr
