#pragma once

#include <stdexcept>
#include <string>

namespace cslattice {

// Root of every error thrown by the library. The CLI maps subclasses onto exit
// codes, so new failure modes should derive from one of the two groups below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- input / configuration problems (CLI exit code 2) ----

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyBasisError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// ---- numerical failures (CLI exit code 3) ----

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public NumericalError {
 public:
  IntegrationFailure(const std::string& what, double reached_time)
      : NumericalError(what), reached_time_(reached_time) {}

  double reached_time() const noexcept { return reached_time_; }

 private:
  double reached_time_;
};

class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CutoffTooSmall : public NumericalError {
 public:
  CutoffTooSmall(const std::string& what, double tail_mass)
      : NumericalError(what), tail_mass_(tail_mass) {}

  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cslattice
