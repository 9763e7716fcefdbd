#include <doctest.h>

#include "acent/field2d.hpp"
#include "acent/sampling.hpp"
#include "oracles.hpp"

using namespace acent;
using doctest::Approx;

namespace {

GaussianProcessModel white(double c = 1.0) { return GaussianProcessModel(SpectralDensity::white(c)); }
GaussianProcessModel ar1() { return GaussianProcessModel(SpectralDensity::poisson(0.5)); }

Eigen::MatrixXd kronecker_covariance(const SeparableFieldModel& fm, std::size_t n) {
  const Eigen::MatrixXd ra = oracle::toeplitz(fm.factor_a().autocovariance(n).values(), n);
  const Eigen::MatrixXd rb = oracle::toeplitz(fm.factor_b().autocovariance(n).values(), n);
  Eigen::MatrixXd big(n * n, n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    for (std::size_t j = 0; j < n * n; ++j) big(i, j) = ra(i / n, j / n) * rb(i % n, j % n);
  }
  return big;
}

}  // namespace

TEST_CASE("2-D block entropy") {
  CHECK(block_entropy_2d(SeparableFieldModel(white(), white()), 3) == Approx(9 * 1.4189385332).epsilon(1e-10));
  const SeparableFieldModel pp(ar1(), ar1()), pw(ar1(), white());
  CHECK(block_entropy_2d(pp, 2) == Approx(4 * 1.4189385332 + 2 * std::log(0.75)).epsilon(1e-10));
  CHECK(block_entropy_2d(pw, 2) == Approx(4 * 1.4189385332 + std::log(0.75)).epsilon(1e-10));
  for (const auto* fm : {&pp, &pw}) {
    const double dense = 4 * oracle::kH1 + 0.5 * std::log(kronecker_covariance(*fm, 2).determinant());
    CHECK(block_entropy_2d(*fm, 2) == Approx(dense).epsilon(1e-13));
  }
}

TEST_CASE("Kronecker log-determinant and density against dense evaluation") {
  const SeparableFieldModel fm(GaussianProcessModel(SpectralDensity::autoregressive({0.5, -0.3}, 1.0)),
                               GaussianProcessModel(SpectralDensity::moving_average({1.0, 0.8})));
  CHECK(fm.variance() == Approx(fm.factor_a().variance() * 1.64));
  CHECK(fm.id() == "separable(" + fm.factor_a().id() + "," + fm.factor_b().id() + ")");
  for (std::size_t n = 1; n <= 6; ++n) {
    const Eigen::MatrixXd big = kronecker_covariance(fm, n);
    const double logdet = oracle::dense_log_det(big);
    const double hn = n * n * oracle::kH1 + 0.5 * logdet;
    CHECK(block_entropy_2d(fm, n) == Approx(hn).epsilon(1e-10));
    const auto x = sample_field(fm, n, n);
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.values.data(), n * n);
    const double dense = -0.5 * n * n * oracle::kLog2Pi - 0.5 * logdet - 0.5 * oracle::dense_quadratic_form(big, v);
    CHECK(log_field_density(fm, x.values, n) == Approx(dense).epsilon(1e-8));
  }
}

TEST_CASE("2-D entropy rate") {
  CHECK(entropy_rate_2d(SeparableFieldModel(white(), white())).value() == Approx(1.4189385332).epsilon(1e-10));
  const SeparableFieldModel pp(ar1(), ar1()), pw(ar1(), white());
  CHECK(entropy_rate_2d(pp).value() == Approx(1.1312564608).epsilon(1e-10));
  CHECK(entropy_rate_2d(pw).value() == Approx(1.2750974970).epsilon(1e-10));
  CHECK(std::abs(block_entropy_2d(pp, 256) / (256.0 * 256) - entropy_rate_2d(pp).value()) <= 2 * std::abs(std::log(0.75)) / 256);
  CHECK(std::abs(block_entropy_2d(pw, 256) / (256.0 * 256) - entropy_rate_2d(pw).value()) <= 2 * std::abs(std::log(0.75)) / 256);
}

TEST_CASE("H_n^(2)/n² decreases to the 2-D rate") {
  const auto zoo = oracle::model_zoo();
  for (std::size_t i = 0; i < zoo.size(); i += 2) {
    const SeparableFieldModel fm(GaussianProcessModel(zoo[i].density), GaussianProcessModel(zoo[(i + 3) % zoo.size()].density));
    const double rate = entropy_rate_2d(fm).value();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n = 2; n <= 256; n *= 2) {
      const double h = block_entropy_2d(fm, n) / double(n * n);
      CHECK_MESSAGE(h <= prev + 1e-12, fm.id());
      CHECK(h >= rate - 1e-10);
      prev = h;
    }
    CHECK_MESSAGE(prev - rate <= 5e-3, fm.id());
  }
}

TEST_CASE("2-D rate equals ½log(2πe·r(0)) exactly for white factors") {
  const auto zoo = oracle::model_zoo();
  for (const auto& a : zoo) {
    for (const auto& b : zoo) {
      const SeparableFieldModel fm{GaussianProcessModel(a.density), GaussianProcessModel(b.density)};
      const double bound = 0.5 * std::log(2 * oracle::kPi * std::exp(1.0) * fm.variance());
      const bool both_white = std::holds_alternative<density::White>(a.density.node()) &&
                              std::holds_alternative<density::White>(b.density.node());
      const double rate = entropy_rate_2d(fm).value();
      CHECK(rate <= bound + 1e-10);
      CHECK_MESSAGE((std::abs(rate - bound) <= 1e-10) == both_white, fm.id());
    }
  }
}

TEST_CASE("product-marginal KL in 2-D") {
  CHECK(product_marginal_kl_2d(SeparableFieldModel(white(), white(3.0)), 5) == Approx(0.0).scale(1).epsilon(1e-13));
  const SeparableFieldModel pp(ar1(), ar1());
  CHECK(product_marginal_kl_2d(pp, 2) == Approx(-2 * std::log(0.75)).epsilon(1e-12));
  // KL of N(0, R) from N(0, diag R) with unit diagonal is −½ log det R
  CHECK(product_marginal_kl_2d(pp, 2) == Approx(-0.5 * oracle::dense_log_det(kronecker_covariance(pp, 2))).epsilon(1e-13));
  CHECK(std::abs(product_marginal_kl_2d(pp, 256) / (256.0 * 256) - 0.2876820725) <= 0.003);

  for (std::size_t n : {2, 4}) {
    for (std::size_t p : {2, 3}) CHECK(product_marginal_kl_2d(pp, p * n) >= p * p * product_marginal_kl_2d(pp, n) - 1e-10);
  }
}

TEST_CASE("2-D rate from the product-marginal KL limit") {
  const auto zoo = oracle::model_zoo();
  for (const auto& [a, b] : {std::pair{3, 3}, std::pair{3, 0}, std::pair{6, 8}, std::pair{7, 10}}) {
    const SeparableFieldModel fm(GaussianProcessModel(zoo[a].density), GaussianProcessModel(zoo[b].density));
    const double r0 = fm.variance();
    // ∫ ρ₁ log ρ₁ for N(0, r0)
    const double neg_h1 = -0.5 * std::log(2 * oracle::kPi * std::exp(1.0) * r0);
    const double rate = entropy_rate_2d(fm).value();
    double sup = 0.0;
    for (std::size_t n = 1; n <= 256; n *= 2) sup = std::max(sup, product_marginal_kl_2d(fm, n) / double(n * n));
    const double from_sup = -sup - neg_h1;
    // The sup over n <= 256 approaches from above at rate O(1/n).
    CHECK(from_sup >= rate - 1e-12);
    CHECK_MESSAGE(from_sup - rate <= 5e-3, fm.id());
    // Richardson extrapolation of z_n/n² (error c/n + exponentially small terms)
    const double z128 = product_marginal_kl_2d(fm, 128) / (128.0 * 128);
    const double z256 = product_marginal_kl_2d(fm, 256) / (256.0 * 256);
    const double extrapolated = -(2 * z256 - z128) - neg_h1;
    CHECK_MESSAGE(std::abs(extrapolated - rate) <= 1e-6, fm.id());
  }
}
