#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "acent/extended_real.hpp"
#include "acent/gaussian_model.hpp"

namespace acent {

/// Finite-past linear prediction errors against the infinite-past limit.
/// Vectors are indexed by n = 1..N at position n-1.
struct PredictionDiagnostics {
  std::string model_id;
  /// σ²_n: error predicting X_0 from X_{-n}..X_{-1}.
  std::vector<double> sigma2;
  /// σ²_∞ = exp(∫ log f dλ)
  double sigma2_inf;
  /// δ_n = σ²_n − σ²_∞ = ‖QX_0 − Q_nX_0‖²
  std::vector<double> delta;
  /// S_N = Σ_{n<=N} δ_n
  std::vector<double> gap_sums;
  /// T_N = Σ_{n<=N} n·L̂(n)², L = log f
  std::vector<double> strong_szego_sums;
};

/// Throws DegenerateProcess when ∫ log f dλ = -inf.
PredictionDiagnostics prediction_gap_series(const GaussianProcessModel& model, std::size_t max_n);

struct SzegoIntegrability {
  bool integrable;
  ExtendedReal value;
};

/// Whether log f is Lebesgue integrable, i.e. the entropy rate is finite. This is the
/// criterion for the one-sided shift of the process to be isomorphic to the one-sided
/// independent Gaussian shift.
SzegoIntegrability szego_integrability(const GaussianProcessModel& model);

/// Columns: n,sigma2_n,delta_n,S_N,T_N
std::string prediction_csv(const PredictionDiagnostics& diag);

}  // namespace acent
