#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "acent/extended_real.hpp"
#include "acent/gaussian_model.hpp"

namespace acent {

/// Stationary Gaussian field on Z² with separable covariance
/// Cov(x_{s,t}, x_{s',t'}) = r_a(s−s')·r_b(t−t').
///
/// Values of an n×n block are stored row-major: x_{s,t} at s·n + t. The row index s
/// runs along factor a (the T direction), the column index t along factor b (the S
/// direction), so the block covariance is R_{a,n} ⊗ R_{b,n}.
class SeparableFieldModel {
 public:
  SeparableFieldModel(GaussianProcessModel a, GaussianProcessModel b);

  const GaussianProcessModel& factor_a() const { return a_; }
  const GaussianProcessModel& factor_b() const { return b_; }
  std::string id() const;
  double variance() const { return a_.variance() * b_.variance(); }

 private:
  GaussianProcessModel a_;
  GaussianProcessModel b_;
};

/// H_n^{(2)} = (n²/2)(log 2π + 1) + (n/2)(D_{a,n} + D_{b,n}).
double block_entropy_2d(const SeparableFieldModel& fm, std::size_t n);

/// Se(F,T,S) = ½(log 2π + 1) + ½(∫ log f_a + ∫ log f_b), or -inf.
ExtendedReal entropy_rate_2d(const SeparableFieldModel& fm);

/// KL of the n×n block law from the product of its marginals:
/// ½(n²·log(r_a(0) r_b(0)) − n(D_{a,n} + D_{b,n})).
double product_marginal_kl_2d(const SeparableFieldModel& fm, std::size_t n);

/// log of the n²-dimensional Gaussian density at a row-major n×n block.
/// The quadratic form tr(R_a^{-1} X R_b^{-1} X^T) is evaluated by whitening the
/// columns with factor a and then the rows with factor b.
double log_field_density(const SeparableFieldModel& fm, std::span<const double> values, std::size_t n);

}  // namespace acent
