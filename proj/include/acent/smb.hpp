#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acent/extended_real.hpp"
#include "acent/field2d.hpp"
#include "acent/gaussian_model.hpp"
#include "acent/sampling.hpp"

namespace acent {

/// Shannon information I_m = −log ρ_m(x_0..x_{m−1}) for m = 1..n, built from the
/// one-step conditional increments ½ log 2π + ½ log σ²_{m−1} + ½ e²_{m−1}/σ²_{m−1}.
/// For transformed paths the density of y = φ(x) is used, which adds Σ log φ'(x_i).
std::vector<double> information_path(const GaussianProcessModel& model, const Trajectory& traj);

/// (1/(N−1)) Σ_{m=1}^{N−1} e_m²/σ²_m over the normalized squared innovations of the path.
double innovation_average(const GaussianProcessModel& model, const Trajectory& traj);

/// (1/n²)·h_n^{(2)} = −(1/n²) log f_{n²}(X) for an n×n sample.
double information_field(const SeparableFieldModel& fm, const FieldSample& sample);

struct ConvergenceRow {
  std::size_t n;
  double mean;
  double sd;
  /// Mean absolute deviation from se_exact.
  double mad;
  /// Entropy rate the normalized information converges to.
  double se_exact;
  /// Exact expectation of the normalized information at this n (H_n/n or H_n^{(2)}/n²).
  double hn_over_n;
  /// 1/√(2n) in 1-D, 1/√(2n²) in 2-D; absent for transformed paths.
  std::optional<double> theoretical_sd;
  bool pass;
};

struct ConvergenceReport {
  std::string model_id;
  int dimension;
  std::size_t ensemble_size;
  std::uint64_t base_seed;
  std::size_t workers;
  std::string transform;
  std::vector<ConvergenceRow> rows;

  bool all_pass() const;
};

struct ExperimentOptions {
  std::size_t workers = 1;
  std::optional<MonotoneMap> transform;
};

/// M seeded paths of length max(n_grid); row n reports (1/n)I_n over the ensemble.
/// A row passes when |mean − H_n/n| <= 4·sd_th/√M and, for Gaussian paths, the
/// empirical sd lies in [0.7, 1.3]·sd_th. Throws RateNotFinite if Se = -inf.
ConvergenceReport smb_experiment(const GaussianProcessModel& model, const std::vector<std::size_t>& n_grid,
                                 std::size_t ensemble_size, std::uint64_t base_seed,
                                 const ExperimentOptions& opts = {});

/// Z² analogue on square blocks: each seed draws one max(n_grid) field and every row
/// reads its top-left n×n corner.
ConvergenceReport smb2d_experiment(const SeparableFieldModel& fm, const std::vector<std::size_t>& n_grid,
                                   std::size_t ensemble_size, std::uint64_t base_seed,
                                   const ExperimentOptions& opts = {});

/// Columns: n,mean,sd,se_exact,hn_over_n,theoretical_sd,pass
std::string convergence_csv(const ConvergenceReport& report);
std::string convergence_json(const ConvergenceReport& report);

}  // namespace acent
