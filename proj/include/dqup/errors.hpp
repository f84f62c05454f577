#pragma once

// Exception types thrown across the library. The CLI maps them onto exit
// codes, so every failure class gets its own type.

#include <stdexcept>
#include <string>

namespace dqup {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric failures (CLI exit code 4).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public NumericError {
 public:
  DivisionByZero() : NumericError("division by zero quaternion") {}
};

class NonFiniteValue : public NumericError {
 public:
  explicit NonFiniteValue(const std::string& where = "quaternion")
      : NumericError("non-finite component in " + where) {}
};

class Overflow : public NumericError {
 public:
  explicit Overflow(const std::string& op) : NumericError("floating overflow in " + op) {}
};

class ZeroSignal : public NumericError {
 public:
  ZeroSignal() : NumericError("signal is identically zero") {}
};

class ConditionViolated : public NumericError {
 public:
  using NumericError::NumericError;
};

// Argument / shape / input failures (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public InvalidArgument {
 public:
  explicit ShapeMismatch(const std::string& what = "operand shapes differ")
      : InvalidArgument(what) {}
};

class OutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class TooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class TooSmall : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SearchBudgetExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class EmptyBand : public InvalidArgument {
 public:
  EmptyBand() : InvalidArgument("observed band is empty") {}
};

class MalformedFile : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedMaxval : public MalformedFile {
 public:
  explicit UnsupportedMaxval(int maxval)
      : MalformedFile("unsupported PPM maxval " + std::to_string(maxval) + " (only 255)") {}
};

}  // namespace dqup
