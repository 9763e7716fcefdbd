#pragma once
// Test-only reference computations. Nothing here calls into the Levinson engine or the
// library quadrature; dense linear algebra comes from Eigen.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "acent/gaussian_model.hpp"
#include "acent/spectral.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline const double kLog2Pi = std::log(2.0 * kPi);
/// ½ log(2πe)
inline const double kH1 = 0.5 * (kLog2Pi + 1.0);

inline Eigen::MatrixXd toeplitz(const std::vector<double>& r, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r[i > j ? i - j : j - i];
  }
  return m;
}

inline double dense_log_det(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  const Eigen::MatrixXd l = llt.matrixL();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += 2.0 * std::log(l(i, i));
  return s;
}

inline double dense_quadratic_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  return x.dot(m.llt().solve(x));
}

/// Trapezoid rule on N uniform nodes of [-π, π) applied to f(t)·cos(nt).
template <class F>
double trapezoid_cos(F&& f, int n, int nodes = 1 << 14) {
  double s = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = -kPi + 2.0 * kPi * (j + 0.5) / nodes;
    s += f(t) * std::cos(n * t);
  }
  return s / nodes;
}

template <class F>
double trapezoid_mean(F&& f, int nodes = 1 << 14) {
  return trapezoid_cos(std::forward<F>(f), 0, nodes);
}

/// Gauss–Hermite nodes/weights for ∫ g(x) φ(x) dx with φ the standard normal density
/// (Golub–Welsch on the probabilists' Hermite recurrence).
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int k) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) j(i, i - 1) = j(i - 1, i) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  std::vector<double> x(k), w(k);
  for (int i = 0; i < k; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

struct ZooEntry {
  std::string name;
  acent::SpectralDensity density;
  bool white_unit = false;
};

/// Models used by the cross-cutting property tests.
inline std::vector<ZooEntry> model_zoo() {
  using acent::SpectralDensity;
  return {
      {"white(1)", SpectralDensity::white(1.0), true},
      {"white(4)", SpectralDensity::white(4.0)},
      {"white(0.5)", SpectralDensity::white(0.5)},
      {"poisson(0.5)", SpectralDensity::poisson(0.5)},
      {"poisson(-0.7)", SpectralDensity::poisson(-0.7)},
      {"poisson(0.9)", SpectralDensity::poisson(0.9)},
      {"ma1", SpectralDensity::moving_average_normalized({1.0, 0.5})},
      {"ma2", SpectralDensity::moving_average({1.0, -0.3, 0.2})},
      {"ar2", SpectralDensity::autoregressive({0.5, -0.3}, 1.0)},
      {"power_singular(0.3)", SpectralDensity::power_singular(0.3)},
      {"sum", SpectralDensity::sum(SpectralDensity::poisson(0.5), SpectralDensity::white(1.0))},
      {"filter", SpectralDensity::filtered({{1.0, 0.5}}, SpectralDensity::poisson(0.5))},
  };
}

}  // namespace oracle
