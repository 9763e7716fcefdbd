#include "acent/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

struct GaussianProcessModel::Cache {
  std::mutex mutex;
  std::shared_ptr<const LevinsonFactorization> fact;
  std::optional<ExtendedReal> szego;
};

GaussianProcessModel::GaussianProcessModel(SpectralDensity f)
    : density_(std::move(f)), variance_(0.0), cache_(std::make_shared<Cache>()) {
  variance_ = acent::autocovariance(density_, 0)[0];
  if (!(variance_ > 0.0)) throw ConfigError("model variance r(0) must be positive");
}

AutocovarianceSequence GaussianProcessModel::autocovariance(std::size_t max_lag) const {
  return acent::autocovariance(density_, max_lag);
}

std::shared_ptr<const LevinsonFactorization> GaussianProcessModel::factorization(std::size_t order) const {
  if (order == 0) order = 1;
  std::lock_guard lock(cache_->mutex);
  const std::size_t current = cache_->fact ? cache_->fact->order() : 0;
  if (current >= order) return cache_->fact;

  auto build = [&](std::size_t n) {
    return std::make_shared<const LevinsonFactorization>(levinson(acent::autocovariance(density_, n - 1), n));
  };
  const std::size_t grown = std::max({order, 2 * current, std::size_t{16}});
  try {
    cache_->fact = build(grown);
  } catch (const EvaluationUnavailable&) {
    cache_->fact = build(order);  // covariance table ends before the doubled order
  } catch (const NotPositiveDefinite& e) {
    if (e.order() < order) throw;
    cache_->fact = build(order);
  }
  return cache_->fact;
}

ExtendedReal GaussianProcessModel::szego() const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->szego) cache_->szego = szego_integral(density_);
  return *cache_->szego;
}

double log_block_density(const GaussianProcessModel& model, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  const auto fact = model.factorization(n);
  return -0.5 * static_cast<double>(n) * std::log(kTwoPi) - 0.5 * log_det(*fact, n) -
         0.5 * quadratic_form(*fact, x);
}

double block_entropy(const GaussianProcessModel& model, std::size_t n) {
  if (n == 0) return 0.0;
  const auto fact = model.factorization(n);
  return static_cast<double>(n) * kGaussianEntropy + 0.5 * log_det(*fact, n);
}

ExtendedReal entropy_rate(const GaussianProcessModel& model) {
  return 0.5 * model.szego() + kGaussianEntropy;
}

double infinite_prediction_error(const GaussianProcessModel& model) {
  const auto s = model.szego();
  return s.is_finite() ? std::exp(s.value()) : 0.0;
}

GaussianProcessModel filtered_model(const GaussianProcessModel& model, const TrigSymbol& g) {
  // Constant gains stay in closed form.
  if (g.coeffs.size() == 1 && g.coeffs[0] != 0.0) {
    return GaussianProcessModel(SpectralDensity::scaled(g.coeffs[0] * g.coeffs[0], model.density()));
  }
  return GaussianProcessModel(SpectralDensity::filtered(g, model.density()));
}

GaussianProcessModel sum_independent(const GaussianProcessModel& a, const GaussianProcessModel& b) {
  const auto* wa = std::get_if<density::White>(&a.density().node());
  const auto* wb = std::get_if<density::White>(&b.density().node());
  if (wa && wb) return GaussianProcessModel(SpectralDensity::white(wa->c + wb->c));
  return GaussianProcessModel(SpectralDensity::sum(a.density(), b.density()));
}

}  // namespace acent
