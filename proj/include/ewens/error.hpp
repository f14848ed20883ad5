#pragma once

#include <stdexcept>
#include <string>

namespace ewens {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model parameter is outside its domain (theta <= 0, beta outside (0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input too large for an exhaustive routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad lists, mismatched ground sets, non-surjective maps.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Division by an exact zero, or evaluation at a pole.
class DivisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ewens
