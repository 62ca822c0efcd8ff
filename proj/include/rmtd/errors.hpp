#pragma once

#include <stdexcept>
#include <string>

namespace rmtd {

// Inconsistent or out-of-range Hilbert-space dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matrix failed one of the density-matrix (or pure-state) invariants.
class ValidationError : public std::runtime_error {
 public:
  enum class Invariant { Hermiticity, UnitTrace, Positivity, UnitNorm, Square, Other };

  ValidationError(Invariant which, double magnitude, const std::string& what)
      : std::runtime_error(what), which_(which), magnitude_(magnitude) {}

  Invariant invariant() const noexcept { return which_; }
  // Size of the violation, e.g. |tr rho - 1| or the negativity -lambda_min.
  double magnitude() const noexcept { return magnitude_; }

 private:
  Invariant which_;
  double magnitude_;
};

// Second-order perturbation theory produced a non-physical state.
class RegimeError : public std::runtime_error {
 public:
  RegimeError(double deficit, const std::string& what)
      : std::runtime_error(what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmtd
