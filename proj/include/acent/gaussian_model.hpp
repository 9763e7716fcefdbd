#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "acent/extended_real.hpp"
#include "acent/spectral.hpp"
#include "acent/toeplitz.hpp"

namespace acent {

/// Centered stationary Gaussian process X_n with spectral density f; the observable
/// is the zero coordinate, so ‖F‖²₂ = r(0).
///
/// The Levinson factorization is built lazily and grown by doubling; it sits behind
/// a mutex, and the returned factorizations are immutable, so a model can be shared
/// across threads.
class GaussianProcessModel {
 public:
  explicit GaussianProcessModel(SpectralDensity f);

  const SpectralDensity& density() const { return density_; }
  std::string id() const { return density_.describe(); }
  /// r(0)
  double variance() const { return variance_; }

  AutocovarianceSequence autocovariance(std::size_t max_lag) const;

  /// A factorization of order >= `order`.
  std::shared_ptr<const LevinsonFactorization> factorization(std::size_t order) const;

  /// ∫ log f dλ, computed once.
  ExtendedReal szego() const;

 private:
  struct Cache;
  SpectralDensity density_;
  double variance_;
  std::shared_ptr<Cache> cache_;
};

/// log ρ_n(x) with n = x.size().
double log_block_density(const GaussianProcessModel& model, std::span<const double> x);

/// H_n = (n/2)(log 2π + 1) + ½ log det R_n.
double block_entropy(const GaussianProcessModel& model, std::size_t n);

/// Se = ½ log(2πe) + ½ ∫ log f dλ, or -inf.
ExtendedReal entropy_rate(const GaussianProcessModel& model);

/// ‖F - QF‖²₂ = exp(∫ log f dλ); 0 when the integral is -inf.
double infinite_prediction_error(const GaussianProcessModel& model);

/// Model of Y_0 = Σ g_k X_k, with density |g|²·f.
GaussianProcessModel filtered_model(const GaussianProcessModel& model, const TrigSymbol& g);

/// Sum of two independent processes, with density f₁ + f₂.
GaussianProcessModel sum_independent(const GaussianProcessModel& a, const GaussianProcessModel& b);

}  // namespace acent
