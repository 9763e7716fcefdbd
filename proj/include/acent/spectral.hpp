#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "acent/extended_real.hpp"

namespace acent {

/// One-sided trigonometric polynomial g(t) = Σ_{k=0}^{q} g_k e^{ikt}.
struct TrigSymbol {
  std::vector<double> coeffs;

  /// |g(t)|²
  double modulus_squared(double t) const;
  bool is_zero() const;
};

/// Autocovariances r(0..N) of a stationary sequence; r(-n) = r(n) is implied.
class AutocovarianceSequence {
 public:
  enum class Origin { kClosedForm, kQuadrature };

  AutocovarianceSequence(std::vector<double> values, Origin origin, std::size_t grid_size = 0);

  double operator[](std::ptrdiff_t lag) const;  // symmetric in lag
  std::size_t max_lag() const { return values_.size() - 1; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  Origin origin() const { return origin_; }
  /// Number of quadrature nodes used, 0 for closed forms.
  std::size_t grid_size() const { return grid_size_; }

 private:
  std::vector<double> values_;
  Origin origin_;
  std::size_t grid_size_;
};

class SpectralDensity;

namespace density {

struct White {
  double c;
};
/// (1-r²)/|1-re^{it}|², covariances r^{|n|}.
struct PoissonKernel {
  double r;
};
/// |Σ a_k e^{ikt}|²
struct MovingAverage {
  std::vector<double> coeffs;
};
/// s²/|1-Σ c_k e^{ikt}|², stationary.
struct AutoRegressive {
  std::vector<double> coeffs;
  double innovation_variance;
};
/// scale·|1-e^{it}|^{2α}, 0 < α < ½.
struct PowerSingular {
  double alpha;
  double scale;
};
/// Density known only through r(0..N).
struct FourierTable {
  std::vector<double> r;
};
struct Scaled;
struct Sum;
struct FilterProduct;

}  // namespace density

/// Density of an absolutely continuous spectral measure on the circle, taken with
/// respect to the normalized Lebesgue measure λ (total mass 1). Immutable; copies
/// share structure.
class SpectralDensity {
 public:
  struct Node;

  static SpectralDensity white(double c);
  static SpectralDensity poisson(double r);
  static SpectralDensity moving_average(std::vector<double> coeffs);
  /// Moving average rescaled so that r(0) = 1.
  static SpectralDensity moving_average_normalized(std::vector<double> coeffs);
  static SpectralDensity autoregressive(std::vector<double> coeffs, double innovation_variance);
  static SpectralDensity power_singular(double alpha, double scale = 1.0);
  static SpectralDensity fourier_table(std::vector<double> r);
  static SpectralDensity scaled(double c, SpectralDensity f);
  static SpectralDensity sum(SpectralDensity a, SpectralDensity b);
  static SpectralDensity filtered(TrigSymbol g, SpectralDensity f);

  /// The variant held by this density; visit it to dispatch on the kind.
  const auto& node() const;
  std::string describe() const;

 private:
  explicit SpectralDensity(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  template <class T>
  static SpectralDensity make(T&& value);
  std::shared_ptr<const Node> node_;
};

namespace density {
struct Scaled {
  double c;
  SpectralDensity f;
};
struct Sum {
  SpectralDensity a;
  SpectralDensity b;
};
/// |g|²·f, the density of the filtered process Σ g_k X_{n+k}.
struct FilterProduct {
  TrigSymbol g;
  SpectralDensity f;
};
}  // namespace density

struct SpectralDensity::Node {
  std::variant<density::White, density::PoissonKernel, density::MovingAverage, density::AutoRegressive,
               density::PowerSingular, density::FourierTable, density::Scaled, density::Sum,
               density::FilterProduct>
      value;
};

inline const auto& SpectralDensity::node() const { return node_->value; }

struct QuadratureOptions {
  double tolerance = 1e-10;
  std::size_t initial_grid = 64;
  std::size_t max_grid = std::size_t{1} << 22;
  /// When nonzero, evaluate on exactly this many nodes and skip the doubling test.
  std::size_t fixed_grid = 0;
};

/// Pointwise value at t ∈ [-π, π].
double eval_density(const SpectralDensity& f, double t);

/// r(0..max_lag) = ∫ e^{int} f dλ using the closed form of each variant.
AutocovarianceSequence autocovariance(const SpectralDensity& f, std::size_t max_lag);

/// r(0..max_lag) by trapezoidal quadrature with grid doubling; works for any evaluable density.
AutocovarianceSequence quadrature_autocovariance(const SpectralDensity& f, std::size_t max_lag,
                                                 const QuadratureOptions& opts = {});

/// ∫ log f dλ, or -inf when f vanishes on a set of positive measure.
ExtendedReal szego_integral(const SpectralDensity& f);

/// Szegő integral by quadrature of log f only (no closed forms).
ExtendedReal quadrature_szego_integral(const SpectralDensity& f, const QuadratureOptions& opts = {});

/// Fourier coefficients L̂(1..max_n) of L = log f. Index 0 of the result holds L̂(1).
std::vector<double> log_density_fourier_coeffs(const SpectralDensity& f, std::size_t max_n);

/// ∫ log|g| dλ for a trigonometric symbol.
ExtendedReal log_symbol_integral(const TrigSymbol& g);

/// Reflection coefficients of a stationary AR polynomial via the step-down recursion.
/// Throws ConfigError when a pole lies on or outside the unit circle.
std::vector<double> ar_reflection_coefficients(const std::vector<double>& coeffs);

}  // namespace acent
