#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acent/field2d.hpp"
#include "acent/gaussian_model.hpp"

namespace acent {

/// SplitMix64 output function applied to a state that advances by the golden gamma.
std::uint64_t splitmix64(std::uint64_t& state);

/// Independent stream seed for trajectory `index` of an ensemble with `base` seed.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index);

/// Standard normal deviates from a SplitMix64 counter stream via Box-Muller.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(seed) {}
  double operator()();

 private:
  double uniform_open();  // (0, 1]
  std::uint64_t state_;
  std::optional<double> spare_;
};

/// Record of a coordinatewise monotone transform y_i = φ(x_i).
struct TransformRecord {
  std::string map_name;
  /// The underlying Gaussian values x.
  std::vector<double> latent;
  /// log φ'(x_i) per coordinate, summed over composed maps.
  std::vector<double> log_derivative;
};

struct Trajectory {
  std::vector<double> values;
  std::string model_id;
  std::uint64_t seed = 0;
  std::optional<TransformRecord> transform;

  /// Σ log φ'(x_i), zero for untransformed paths.
  double log_jacobian() const;
  /// The Gaussian path the information is computed from.
  const std::vector<double>& latent() const { return transform ? transform->latent : values; }
};

/// n×n block, row-major (row s along factor a).
struct FieldSample {
  std::size_t n = 0;
  std::vector<double> values;
  std::string model_id;
  std::uint64_t seed = 0;

  double at(std::size_t s, std::size_t t) const { return values[s * n + t]; }
};

/// Strictly increasing differentiable map with its derivative.
struct MonotoneMap {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static MonotoneMap identity();
  static MonotoneMap scale(double c);
  /// x + ε·sin x, increasing for |ε| < 1.
  static MonotoneMap sine_perturbed(double eps);
};

/// Innovations sampler: x_m = x̂_m + σ_m z_m with z from NormalStream(seed). Law N(0, R_n).
Trajectory sample_path(const GaussianProcessModel& model, std::size_t n, std::uint64_t seed);

/// X = L_a Z L_b^T with dense Cholesky factors of R_{a,n}, R_{b,n} and Z filled row-major
/// from NormalStream(seed).
FieldSample sample_field(const SeparableFieldModel& fm, std::size_t n, std::uint64_t seed);

/// y_i = φ(x_i). Throws NonMonotone if φ'(x_i) <= 0 anywhere on the path.
Trajectory transform_path(const Trajectory& traj, const MonotoneMap& phi);

/// E[log φ'(X)] for X ~ N(0, variance).
double expected_log_derivative(const MonotoneMap& phi, double variance);

/// Header comment lines with model id and seed, then "index,value" rows.
std::string trajectory_csv(const Trajectory& traj);
/// Header comment lines, then one CSV row per field row.
std::string field_csv(const FieldSample& field);

}  // namespace acent
