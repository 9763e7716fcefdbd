#pragma once

#include <optional>
#include <string>

#include "acent/error.hpp"

namespace acent {

/// A real number or -inf. Entropy rates and Szegő integrals take this type.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal negative_infinity() { return ExtendedReal(); }

  constexpr bool is_finite() const { return value_.has_value(); }

  /// Throws RateNotFinite for -inf.
  double value() const {
    if (!value_) throw RateNotFinite();
    return *value_;
  }

  double value_or(double fallback) const { return value_.value_or(fallback); }

  std::string to_string() const;

  friend constexpr bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  constexpr ExtendedReal() = default;
  std::optional<double> value_;
};

inline ExtendedReal operator+(const ExtendedReal& a, double b) {
  return a.is_finite() ? ExtendedReal(a.value() + b) : a;
}

inline ExtendedReal operator*(double s, const ExtendedReal& a) {
  // only used with positive scale factors
  return a.is_finite() ? ExtendedReal(s * a.value()) : a;
}

}  // namespace acent
