#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "acent/spectral.hpp"

namespace acent {

/// Order-recursive (Durbin-Levinson) factorization of the Toeplitz covariance
/// matrices R_1..R_n built from r(0..n-1).
///
/// σ²_m is the variance of the error when x_m is predicted from x_0..x_{m-1}
/// (equivalently x_0 from x_1..x_m), so det R_m = σ²_0···σ²_{m-1}. Predictor
/// vectors are not stored; PredictorSweep regenerates them from the reflection
/// coefficients.
class LevinsonFactorization {
 public:
  std::size_t order() const { return variances_.size(); }
  double r0() const { return variances_.front(); }

  /// σ²_m for 0 <= m < order().
  double innovation_variance(std::size_t m) const { return variances_.at(m); }
  std::span<const double> innovation_variances() const { return variances_; }

  /// k_1..k_{n-1}; element m-1 holds k_m.
  std::span<const double> reflection_coefficients() const { return reflections_; }

 private:
  friend LevinsonFactorization levinson(const AutocovarianceSequence& r, std::size_t n);
  friend double log_det(const LevinsonFactorization& fact, std::size_t m);

  std::vector<double> variances_;
  std::vector<double> reflections_;
  std::vector<double> log_det_prefix_;  // D_0..D_n
};

/// Factorizes R_n. Throws NotPositiveDefinite(m) if σ²_m <= 1e-13·r(0).
LevinsonFactorization levinson(const AutocovarianceSequence& r, std::size_t n);

/// log det R_m for m <= order().
double log_det(const LevinsonFactorization& fact, std::size_t m);

/// x^T R_m^{-1} x with m = x.size(), in O(m²).
double quadratic_form(const LevinsonFactorization& fact, std::span<const double> x);

/// Coefficients b_0..b_{m-1} of the best linear prediction of x_m from x_0..x_{m-1}
/// (b_j multiplies x_j). Residual variance is σ²_m. Requires 1 <= m < order().
std::vector<double> predictor_coefficients(const LevinsonFactorization& fact, std::size_t m);

/// Normalized innovations (x_m - x̂_m)/σ_m for m < x.size(). This is L^{-1}x for the
/// Cholesky factor L of R_m.
std::vector<double> whiten(const LevinsonFactorization& fact, std::span<const double> x);

/// Walks the forward predictors a_{m,1..m} for m = 0, 1, ... in O(m) per step.
class PredictorSweep {
 public:
  explicit PredictorSweep(const LevinsonFactorization& fact);

  std::size_t order() const { return coeffs_.size(); }
  /// a_{m,j} at index j-1: coefficient of x_{m-j} in the prediction of x_m.
  std::span<const double> coefficients() const { return coeffs_; }
  double variance() const { return fact_->innovation_variance(order()); }

  /// Predicted value of x_m from x_0..x_{m-1}; requires x.size() >= m.
  double predict(std::span<const double> x) const;

  /// Moves to order m+1. Requires m+1 < fact.order().
  void advance();

 private:
  const LevinsonFactorization* fact_;
  std::vector<double> coeffs_;
  std::vector<double> scratch_;
};

}  // namespace acent
