#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "acent/extended_real.hpp"
#include "acent/gaussian_model.hpp"

namespace acent {

/// KL divergence of the n-block law from the standard Gaussian γ_n:
/// ½(tr R_n − n − log det R_n).
double kl_to_standard_gaussian(const GaussianProcessModel& model, std::size_t n);

/// KL divergence of the n-block law from the product of its one-dimensional marginals:
/// ½(n·log r(0) − log det R_n).
double kl_to_marginal_product(const GaussianProcessModel& model, std::size_t n);

/// Mutual information between adjacent blocks of lengths n and p:
/// H_n + H_p − H_{n+p} = ½(D_n + D_p − D_{n+p}).
double block_mutual_information(const GaussianProcessModel& model, std::size_t n, std::size_t p);

/// (H_{p+1} − H_p) − Se; zero exactly when the process has memory p.
/// Throws RateNotFinite if Se = -inf.
double markov_defect(const GaussianProcessModel& model, std::size_t p);

/// H_1 − Se; zero exactly for independent processes.
double independence_defect(const GaussianProcessModel& model);

/// Entropy rate relative to the independent standard Gaussian process:
/// lim (1/n)·KL(block ‖ γ_n) = ½(r(0) − 1 − ∫ log f dλ).
double pinsker_entropy_rate(const GaussianProcessModel& model);

/// H_n/n − H_{2n}/(2n) = I(n, n)/(2n).
double information_stability_gap(const GaussianProcessModel& model, std::size_t n);

struct DyadicDecomposition {
  /// t_p = I(2^p, 2^p) for p = 0..P.
  std::vector<double> terms;
  /// Reconstructed rate after including t_0..t_p.
  std::vector<double> reconstructions;
  double rate;
  /// |reconstructions.back() − Se|
  double residual;
};

/// Se written as ½(log 2π + r(0)) − KL(ρ_1 ‖ γ_1) − ½ Σ_p 2^{-p} I(2^p, 2^p), truncated at level P.
DyadicDecomposition dyadic_decomposition(const GaussianProcessModel& model, std::size_t max_level);

struct EntropyRow {
  std::size_t n;
  double block_entropy;
  double kl_gauss;
  double kl_product;
  /// (H_n − H_{n−1}) − Se, absent when Se = -inf.
  std::optional<double> markov_defect;
};

struct MutualInformationCell {
  std::size_t n;
  std::size_t p;
  double value;
};

/// The identity table for one model. All entries come from one factorization.
struct EntropyReport {
  std::string model_id;
  double variance;
  ExtendedReal szego = 0.0;
  ExtendedReal rate = 0.0;
  std::vector<EntropyRow> rows;
  std::vector<MutualInformationCell> mutual_information;
  std::optional<double> independence_defect;
  std::optional<double> pinsker_rate;
  std::optional<DyadicDecomposition> dyadic;

  /// Largest deviations of the tabulated identities, filled by build_entropy_report.
  double max_kl_identity_error = 0.0;  ///< H_n = −KL_gauss + (n/2)(log 2π + r(0))
  double max_mi_identity_error = 0.0;  ///< H_n + H_p − H_{n+p} = ½(D_n + D_p − D_{n+p})
};

EntropyReport build_entropy_report(const GaussianProcessModel& model, const std::vector<std::size_t>& n_grid,
                                   const std::vector<std::size_t>& mi_grid, std::size_t dyadic_level = 10);

/// Columns: n,H_n,H_n_over_n,KL_gauss,KL_prod,markov_defect
std::string entropy_table_csv(const EntropyReport& report);
/// Columns: n,p,I
std::string mutual_information_csv(const EntropyReport& report);
/// JSON summary (Se, defects, dyadic residual, identity errors).
std::string entropy_summary_json(const EntropyReport& report);

}  // namespace acent
