#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

namespace acent {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// ½·log(2πe), the entropy of a standard normal in nats.
inline const double kGaussianEntropy = 0.5 * (std::log(kTwoPi) + 1.0);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise summation; the result depends only on the order of `xs`.
double pairwise_sum(std::span<const double> xs);

}  // namespace acent
