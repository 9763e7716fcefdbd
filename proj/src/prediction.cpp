#include "acent/prediction.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

namespace {
// Negative gaps of this relative size are rounding in σ²_n − σ²_∞.
constexpr double kGapRounding = 1e-12;
}  // namespace

PredictionDiagnostics prediction_gap_series(const GaussianProcessModel& model, std::size_t max_n) {
  const auto s = model.szego();
  if (!s.is_finite()) throw DegenerateProcess();
  if (max_n == 0) throw ConfigError("prediction: N must be positive");

  PredictionDiagnostics d;
  d.model_id = model.id();
  d.sigma2_inf = std::exp(s.value());
  const auto fact = model.factorization(max_n + 1);
  const auto coeffs = log_density_fourier_coeffs(model.density(), max_n);

  CompensatedSum gaps;
  CompensatedSum strong;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const double sigma2 = fact->innovation_variance(n);
    double delta = sigma2 - d.sigma2_inf;
    if (delta < 0.0 && delta >= -kGapRounding * model.variance()) delta = 0.0;
    gaps.add(delta);
    strong.add(static_cast<double>(n) * coeffs[n - 1] * coeffs[n - 1]);
    d.sigma2.push_back(sigma2);
    d.delta.push_back(delta);
    d.gap_sums.push_back(gaps.value());
    d.strong_szego_sums.push_back(strong.value());
  }
  return d;
}

SzegoIntegrability szego_integrability(const GaussianProcessModel& model) {
  const auto s = model.szego();
  return {s.is_finite(), s};
}

std::string prediction_csv(const PredictionDiagnostics& diag) {
  std::ostringstream os;
  os << "n,sigma2_n,delta_n,S_N,T_N\n";
  char buf[160];
  for (std::size_t i = 0; i < diag.sigma2.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g\n", i + 1, diag.sigma2[i], diag.delta[i],
                  diag.gap_sums[i], diag.strong_szego_sums[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace acent
