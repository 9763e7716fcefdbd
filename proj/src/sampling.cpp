#include "acent/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base;
  const std::uint64_t h = splitmix64(s);
  std::uint64_t t = h ^ (index * 0xD1B54A32D192ED03ULL);
  return splitmix64(t);
}

double NormalStream::uniform_open() {
  // 53 random bits mapped to (0, 1]
  return (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::operator()() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

double Trajectory::log_jacobian() const {
  if (!transform) return 0.0;
  CompensatedSum s;
  for (double v : transform->log_derivative) s.add(v);
  return s.value();
}

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

MonotoneMap MonotoneMap::identity() {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; }};
}

MonotoneMap MonotoneMap::scale(double c) {
  if (!(c > 0.0)) throw NonMonotone("scale map needs a positive factor");
  return {"scale(" + format_number(c) + ")", [c](double x) { return c * x; }, [c](double) { return c; }};
}

MonotoneMap MonotoneMap::sine_perturbed(double eps) {
  if (!(std::abs(eps) < 1.0)) throw NonMonotone("x + eps*sin(x) is monotone only for |eps| < 1");
  return {"sine(" + format_number(eps) + ")", [eps](double x) { return x + eps * std::sin(x); },
          [eps](double x) { return 1.0 + eps * std::cos(x); }};
}

Trajectory sample_path(const GaussianProcessModel& model, std::size_t n, std::uint64_t seed) {
  Trajectory traj;
  traj.model_id = model.id();
  traj.seed = seed;
  if (n == 0) return traj;
  const auto fact = model.factorization(n);
  NormalStream normal(seed);
  traj.values.resize(n);
  PredictorSweep sweep(*fact);
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) sweep.advance();
    traj.values[m] = sweep.predict(traj.values) + std::sqrt(sweep.variance()) * normal();
  }
  return traj;
}

namespace {

Eigen::MatrixXd toeplitz_cholesky(const GaussianProcessModel& model, std::size_t n) {
  const auto r = model.autocovariance(n - 1);
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          r[static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j)];
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite(n);
  return llt.matrixL();
}

}  // namespace

FieldSample sample_field(const SeparableFieldModel& fm, std::size_t n, std::uint64_t seed) {
  FieldSample out;
  out.n = n;
  out.model_id = fm.id();
  out.seed = seed;
  if (n == 0) return out;
  const Eigen::MatrixXd la = toeplitz_cholesky(fm.factor_a(), n);
  const Eigen::MatrixXd lb = toeplitz_cholesky(fm.factor_b(), n);
  NormalStream normal(seed);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd z(ni, ni);
  for (Eigen::Index s = 0; s < ni; ++s) {
    for (Eigen::Index t = 0; t < ni; ++t) z(s, t) = normal();
  }
  const Eigen::MatrixXd x = la.triangularView<Eigen::Lower>() * z * lb.transpose();
  out.values.resize(n * n);
  for (Eigen::Index s = 0; s < ni; ++s) {
    for (Eigen::Index t = 0; t < ni; ++t) out.values[static_cast<std::size_t>(s * ni + t)] = x(s, t);
  }
  return out;
}

Trajectory transform_path(const Trajectory& traj, const MonotoneMap& phi) {
  Trajectory out;
  out.model_id = traj.model_id;
  out.seed = traj.seed;
  TransformRecord rec;
  rec.map_name = traj.transform ? phi.name + " o " + traj.transform->map_name : phi.name;
  rec.latent = traj.latent();
  rec.log_derivative = traj.transform ? traj.transform->log_derivative : std::vector<double>(traj.values.size(), 0.0);
  out.values.resize(traj.values.size());
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    const double d = phi.derivative(traj.values[i]);
    if (!(d > 0.0)) throw NonMonotone(phi.name + ": derivative not positive at x=" + std::to_string(traj.values[i]));
    out.values[i] = phi.value(traj.values[i]);
    rec.log_derivative[i] += std::log(d);
  }
  out.transform = std::move(rec);
  return out;
}

double expected_log_derivative(const MonotoneMap& phi, double variance) {
  // Trapezoid rule on [-12σ, 12σ] against the normal density, refined until stable.
  const double sd = std::sqrt(variance);
  const double half_width = 12.0 * sd;
  auto integrate = [&](std::size_t nodes) {
    const double h = 2.0 * half_width / static_cast<double>(nodes - 1);
    CompensatedSum acc;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double x = -half_width + h * static_cast<double>(i);
      const double d = phi.derivative(x);
      if (!(d > 0.0)) throw NonMonotone(phi.name + ": derivative not positive");
      const double w = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
      acc.add(w * std::log(d) * std::exp(-0.5 * x * x / variance));
    }
    return acc.value() * h / (sd * std::sqrt(kTwoPi));
  };
  std::size_t nodes = 257;
  double prev = integrate(nodes);
  for (int it = 0; it < 12; ++it) {
    nodes = 2 * nodes - 1;
    const double cur = integrate(nodes);
    if (std::abs(cur - prev) < 1e-14) return cur;
    prev = cur;
  }
  return prev;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "# model: " << traj.model_id << "\n# seed: " << traj.seed << "\n";
  if (traj.transform) os << "# transform: " << traj.transform->map_name << "\n";
  os << "index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, traj.values[i]);
    os << buf;
  }
  return os.str();
}

std::string field_csv(const FieldSample& field) {
  std::ostringstream os;
  os << "# model: " << field.model_id << "\n# seed: " << field.seed << "\n";
  char buf[64];
  for (std::size_t s = 0; s < field.n; ++s) {
    for (std::size_t t = 0; t < field.n; ++t) {
      std::snprintf(buf, sizeof buf, "%s%.17g", t ? "," : "", field.at(s, t));
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace acent
