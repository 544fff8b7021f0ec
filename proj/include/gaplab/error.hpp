#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Slope within 1e-12 / q^2 of a rational p/q with q <= 10^4.
class DegenerateScheme : public Error {
 public:
  using Error::Error;
};

class ForbiddenWord : public Error {
 public:
  using Error::Error;
};

// A generator admits no bounded integer relation with the current basis and
// the rank cap has been reached, or a certificate exceeds the coefficient bound.
class IrreducibleGenerator : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaplab
