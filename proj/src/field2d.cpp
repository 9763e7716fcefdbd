#include "acent/field2d.hpp"

#include <cmath>
#include <vector>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

SeparableFieldModel::SeparableFieldModel(GaussianProcessModel a, GaussianProcessModel b)
    : a_(std::move(a)), b_(std::move(b)) {}

std::string SeparableFieldModel::id() const { return "separable(" + a_.id() + "," + b_.id() + ")"; }

namespace {

double factor_log_dets(const SeparableFieldModel& fm, std::size_t n) {
  return log_det(*fm.factor_a().factorization(n), n) + log_det(*fm.factor_b().factorization(n), n);
}

}  // namespace

double block_entropy_2d(const SeparableFieldModel& fm, std::size_t n) {
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  return nd * nd * kGaussianEntropy + 0.5 * nd * factor_log_dets(fm, n);
}

ExtendedReal entropy_rate_2d(const SeparableFieldModel& fm) {
  const auto sa = fm.factor_a().szego();
  const auto sb = fm.factor_b().szego();
  if (!sa.is_finite() || !sb.is_finite()) return ExtendedReal::negative_infinity();
  return kGaussianEntropy + 0.5 * (sa.value() + sb.value());
}

double product_marginal_kl_2d(const SeparableFieldModel& fm, std::size_t n) {
  const double nd = static_cast<double>(n);
  return 0.5 * (nd * nd * std::log(fm.variance()) - nd * factor_log_dets(fm, n));
}

double log_field_density(const SeparableFieldModel& fm, std::span<const double> values, std::size_t n) {
  if (values.size() != n * n) throw DimensionMismatch("log_field_density: expected n*n values");
  if (n == 0) return 0.0;
  const auto fa = fm.factor_a().factorization(n);
  const auto fb = fm.factor_b().factorization(n);

  // W = L_a^{-1} X L_b^{-T}; the quadratic form is ‖W‖²_F.
  std::vector<double> w(values.begin(), values.end());
  std::vector<double> col(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) col[s] = w[s * n + t];
    const auto white = whiten(*fa, col);
    for (std::size_t s = 0; s < n; ++s) w[s * n + t] = white[s];
  }
  CompensatedSum q;
  for (std::size_t s = 0; s < n; ++s) {
    const auto white = whiten(*fb, std::span<const double>(w).subspan(s * n, n));
    for (double e : white) q.add(e * e);
  }
  const double nd = static_cast<double>(n);
  return -0.5 * nd * nd * std::log(kTwoPi) - 0.5 * nd * (log_det(*fa, n) + log_det(*fb, n)) - 0.5 * q.value();
}

}  // namespace acent
