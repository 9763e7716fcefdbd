#include "acent/toeplitz.hpp"

#include <cmath>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

namespace {
constexpr double kDegeneracyThreshold = 1e-13;
}

LevinsonFactorization levinson(const AutocovarianceSequence& r, std::size_t n) {
  if (n == 0) throw DimensionMismatch("levinson: order must be positive");
  if (r.size() < n) throw DimensionMismatch("levinson: need lags through n-1");
  const double r0 = r[0];
  if (!(r0 > 0.0)) throw NotPositiveDefinite(0);

  LevinsonFactorization fact;
  fact.variances_.reserve(n);
  fact.reflections_.reserve(n > 0 ? n - 1 : 0);
  fact.log_det_prefix_.reserve(n + 1);

  CompensatedSum logdet;
  fact.log_det_prefix_.push_back(0.0);
  fact.variances_.push_back(r0);
  logdet.add(std::log(r0));
  fact.log_det_prefix_.push_back(logdet.value());

  std::vector<double> a;  // a_{m,1..m}
  std::vector<double> prev;
  a.reserve(n);
  prev.reserve(n);
  double sigma2 = r0;
  for (std::size_t m = 1; m < n; ++m) {
    double acc = r[static_cast<std::ptrdiff_t>(m)];
    for (std::size_t j = 1; j < m; ++j) {
      acc -= a[j - 1] * r[static_cast<std::ptrdiff_t>(m - j)];
    }
    const double k = acc / sigma2;
    if (!(std::abs(k) < 1.0)) throw NotPositiveDefinite(m);

    prev.assign(a.begin(), a.end());
    for (std::size_t j = 1; j < m; ++j) a[j - 1] = prev[j - 1] - k * prev[m - j - 1];
    a.push_back(k);

    sigma2 *= (1.0 - k) * (1.0 + k);
    if (!(sigma2 > kDegeneracyThreshold * r0)) throw NotPositiveDefinite(m);
    fact.reflections_.push_back(k);
    fact.variances_.push_back(sigma2);
    logdet.add(std::log(sigma2));
    fact.log_det_prefix_.push_back(logdet.value());
  }
  return fact;
}

double log_det(const LevinsonFactorization& fact, std::size_t m) {
  if (m > fact.order()) throw DimensionMismatch("log_det: order exceeds factorization");
  return fact.log_det_prefix_[m];
}

PredictorSweep::PredictorSweep(const LevinsonFactorization& fact) : fact_(&fact) {
  coeffs_.reserve(fact.order());
  scratch_.reserve(fact.order());
}

double PredictorSweep::predict(std::span<const double> x) const {
  const std::size_t m = order();
  double s = 0.0;
  for (std::size_t j = 1; j <= m; ++j) s += coeffs_[j - 1] * x[m - j];
  return s;
}

void PredictorSweep::advance() {
  const std::size_t m = order() + 1;
  if (m >= fact_->order()) throw DimensionMismatch("PredictorSweep: beyond factorization order");
  const double k = fact_->reflection_coefficients()[m - 1];
  scratch_.assign(coeffs_.begin(), coeffs_.end());
  for (std::size_t j = 1; j < m; ++j) coeffs_[j - 1] = scratch_[j - 1] - k * scratch_[m - j - 1];
  coeffs_.push_back(k);
}

double quadratic_form(const LevinsonFactorization& fact, std::span<const double> x) {
  const std::size_t m = x.size();
  if (m > fact.order()) throw DimensionMismatch("quadratic_form: vector longer than factorization order");
  CompensatedSum q;
  PredictorSweep sweep(fact);
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) sweep.advance();
    const double e = x[j] - sweep.predict(x);
    q.add(e * e / sweep.variance());
  }
  return q.value();
}

std::vector<double> whiten(const LevinsonFactorization& fact, std::span<const double> x) {
  const std::size_t m = x.size();
  if (m > fact.order()) throw DimensionMismatch("whiten: vector longer than factorization order");
  std::vector<double> out(m);
  PredictorSweep sweep(fact);
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) sweep.advance();
    out[j] = (x[j] - sweep.predict(x)) / std::sqrt(sweep.variance());
  }
  return out;
}

std::vector<double> predictor_coefficients(const LevinsonFactorization& fact, std::size_t m) {
  if (m < 1 || m >= fact.order()) throw DimensionMismatch("predictor_coefficients: need 1 <= m < order");
  PredictorSweep sweep(fact);
  while (sweep.order() < m) sweep.advance();
  const auto a = sweep.coefficients();
  std::vector<double> b(m);
  for (std::size_t j = 0; j < m; ++j) b[j] = a[m - 1 - j];
  return b;
}

}  // namespace acent
