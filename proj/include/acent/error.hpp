#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acent {

/// Invalid model parameters or malformed inputs. The CLI maps these to exit code 3.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ZeroSymbol : public ConfigError {
 public:
  ZeroSymbol() : ConfigError("filter symbol is identically zero") {}
};

class NonMonotone : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Failures of a numerical procedure on well-formed input. The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  explicit NotPositiveDefinite(std::size_t order)
      : NumericalError("Toeplitz matrix is not positive definite at order " +
                       std::to_string(order)),
        order_(order) {}

  std::size_t order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

class QuadratureNotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EvaluationUnavailable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RateNotFinite : public NumericalError {
 public:
  RateNotFinite() : NumericalError("entropy rate is -inf") {}
};

class DegenerateProcess : public NumericalError {
 public:
  DegenerateProcess()
      : NumericalError("log spectral density is not integrable (deterministic process)") {}
};

}  // namespace acent
