#include "acent/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "acent/error.hpp"
#include "acent/numeric.hpp"
#include "acent/toeplitz.hpp"

namespace acent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(double x) { return std::isfinite(x); }

// Relative negativity tolerated when summing a truncated Fourier series.
constexpr double kTableNegativity = 1e-12;

// Fraction of zero nodes above which the density is treated as vanishing on a set
// of positive measure.
constexpr double kZeroFraction = 1e-3;

// Truncation level M in max(log f, -M).
constexpr double kLogFloor = 50.0;

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

double table_series(const std::vector<double>& r, double t) {
  double s = r[0];
  for (std::size_t n = 1; n < r.size(); ++n) s += 2.0 * r[n] * std::cos(static_cast<double>(n) * t);
  return s;
}

/// Mean of log f over a uniform grid offset by half a step, so nodes avoid 0 and ±π.
struct LogMean {
  double value;
  double zero_fraction;
};

LogMean offset_log_mean(const std::function<double(double)>& f, std::size_t n) {
  CompensatedSum acc;
  std::size_t zeros = 0;
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = -std::numbers::pi + (static_cast<double>(j) + 0.5) * h;
    const double v = f(t);
    if (v > 0.0 && finite(std::log(v))) {
      acc.add(std::log(v));
    } else {
      ++zeros;
    }
  }
  acc.add(-kLogFloor * static_cast<double>(zeros));
  return {acc.value() / static_cast<double>(n), static_cast<double>(zeros) / static_cast<double>(n)};
}

/// ∫ log f dλ for an evaluable density by grid doubling. A density that is zero on
/// a fixed fraction of every grid makes max(log f, -M) decrease linearly in M, so the
/// integral is -inf.
ExtendedReal log_integral(const std::function<double(double)>& f, const QuadratureOptions& opts) {
  if (opts.fixed_grid) {
    const auto lm = offset_log_mean(f, opts.fixed_grid);
    if (lm.zero_fraction > kZeroFraction) return ExtendedReal::negative_infinity();
    return lm.value;
  }
  std::size_t n = std::max<std::size_t>(opts.initial_grid, 8);
  LogMean prev = offset_log_mean(f, n);
  std::optional<double> prev_extrapolated;
  while (n < opts.max_grid) {
    n *= 2;
    const LogMean cur = offset_log_mean(f, n);
    if (prev.zero_fraction > kZeroFraction && cur.zero_fraction > kZeroFraction) {
      return ExtendedReal::negative_infinity();
    }
    if (std::abs(cur.value - prev.value) < opts.tolerance) {
      return cur.value;
    }
    // Isolated zeros or cusps of f leave an O(h) midpoint error (the h·log h term
    // vanishes for offset nodes); one Richardson step removes it.
    const double extrapolated = 2.0 * cur.value - prev.value;
    if (prev_extrapolated && std::abs(extrapolated - *prev_extrapolated) < opts.tolerance) {
      return extrapolated;
    }
    prev_extrapolated = extrapolated;
    prev = cur;
  }
  throw QuadratureNotConverged("log-density quadrature did not stabilize at " +
                               std::to_string(opts.max_grid) + " nodes");
}

/// Covariances of a moving average / filter: Σ_k a_k a_{k+n}.
std::vector<double> coefficient_correlation(const std::vector<double>& a, std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t n = 0; n <= max_lag && n < a.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k + n < a.size(); ++k) s += a[k] * a[k + n];
    r[n] = s;
  }
  return r;
}

std::vector<double> ar_autocovariance(const density::AutoRegressive& ar, std::size_t max_lag) {
  const auto& c = ar.coeffs;
  const std::size_t p = c.size();
  std::vector<double> r(std::max(max_lag, p) + 1, 0.0);
  const auto ks = ar_reflection_coefficients(c);

  // Innovation variances σ²_{m-1} = σ²_m / (1 - k_m²), down to σ²_0 = r(0).
  std::vector<double> sigma2(p + 1);
  sigma2[p] = ar.innovation_variance;
  for (std::size_t m = p; m >= 1; --m) sigma2[m - 1] = sigma2[m] / ((1.0 - ks[m - 1]) * (1.0 + ks[m - 1]));
  r[0] = sigma2[0];

  // Step-up: rebuild r(1..p) together with the order-m predictors.
  std::vector<double> a;
  std::vector<double> prev;
  for (std::size_t m = 1; m <= p; ++m) {
    const double k = ks[m - 1];
    double s = k * sigma2[m - 1];
    for (std::size_t j = 1; j < m; ++j) s += a[j - 1] * r[m - j];
    r[m] = s;
    prev = a;
    for (std::size_t j = 1; j < m; ++j) a[j - 1] = prev[j - 1] - k * prev[m - j - 1];
    a.push_back(k);
  }
  for (std::size_t n = p + 1; n < r.size(); ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= p; ++j) s += c[j - 1] * r[n - j];
    r[n] = s;
  }
  r.resize(max_lag + 1);
  return r;
}

std::vector<double> power_singular_autocovariance(const density::PowerSingular& ps, std::size_t max_lag) {
  // f = scale·|1-e^{it}|^{2α} is the fractionally integrated spectrum with d = -α.
  std::vector<double> r(max_lag + 1);
  const double a = ps.alpha;
  r[0] = ps.scale * std::exp(std::lgamma(1.0 + 2.0 * a) - 2.0 * std::lgamma(1.0 + a));
  for (std::size_t k = 1; k <= max_lag; ++k) {
    const double kd = static_cast<double>(k);
    r[k] = r[k - 1] * (kd - 1.0 - a) / (kd + a);
  }
  return r;
}

std::vector<double> exact_autocovariance(const SpectralDensity& f, std::size_t max_lag) {
  return std::visit(
      overloaded{
          [&](const density::White& w) {
            std::vector<double> r(max_lag + 1, 0.0);
            r[0] = w.c;
            return r;
          },
          [&](const density::PoissonKernel& p) {
            std::vector<double> r(max_lag + 1);
            r[0] = 1.0;
            for (std::size_t n = 1; n <= max_lag; ++n) r[n] = r[n - 1] * p.r;
            return r;
          },
          [&](const density::MovingAverage& ma) { return coefficient_correlation(ma.coeffs, max_lag); },
          [&](const density::AutoRegressive& ar) { return ar_autocovariance(ar, max_lag); },
          [&](const density::PowerSingular& ps) { return power_singular_autocovariance(ps, max_lag); },
          [&](const density::FourierTable& t) {
            if (max_lag >= t.r.size()) {
              throw EvaluationUnavailable("fourier table holds lags through " +
                                          std::to_string(t.r.size() - 1) + ", requested " +
                                          std::to_string(max_lag));
            }
            return std::vector<double>(t.r.begin(), t.r.begin() + static_cast<std::ptrdiff_t>(max_lag) + 1);
          },
          [&](const density::Scaled& s) {
            auto r = exact_autocovariance(s.f, max_lag);
            for (double& x : r) x *= s.c;
            return r;
          },
          [&](const density::Sum& s) {
            auto r = exact_autocovariance(s.a, max_lag);
            const auto rb = exact_autocovariance(s.b, max_lag);
            for (std::size_t n = 0; n <= max_lag; ++n) r[n] += rb[n];
            return r;
          },
          [&](const density::FilterProduct& fp) {
            // r_Y(n) = Σ_{j,k} g_j g_k r_X(n + j - k)
            const auto& g = fp.g.coeffs;
            const std::size_t q = g.size() - 1;
            const auto rx = exact_autocovariance(fp.f, max_lag + q);
            auto at = [&](std::ptrdiff_t lag) { return rx[static_cast<std::size_t>(std::abs(lag))]; };
            std::vector<double> r(max_lag + 1, 0.0);
            for (std::size_t n = 0; n <= max_lag; ++n) {
              double s = 0.0;
              for (std::size_t j = 0; j <= q; ++j) {
                for (std::size_t k = 0; k <= q; ++k) {
                  s += g[j] * g[k] *
                       at(static_cast<std::ptrdiff_t>(n + j) - static_cast<std::ptrdiff_t>(k));
                }
              }
              r[n] = s;
            }
            return r;
          },
      },
      f.node());
}

/// Szegő limit from a covariance table: log σ²_m must settle as m grows, or collapse
/// geometrically when the density vanishes on an arc.
ExtendedReal table_szego(const std::vector<double>& r) {
  const AutocovarianceSequence seq(r, AutocovarianceSequence::Origin::kClosedForm);
  const std::size_t n = r.size();
  try {
    const auto fact = levinson(seq, n);
    if (n < 8) throw QuadratureNotConverged("fourier table too short for the Szegő limit");
    const double last = std::log(fact.innovation_variance(n - 1));
    const double half = std::log(fact.innovation_variance((n - 1) / 2));
    const double quarter = std::log(fact.innovation_variance(3 * (n - 1) / 4));
    if (std::abs(last - half) <= 1e-8) return last;
    if (half - quarter > 0.5 && quarter - last > 0.5) return ExtendedReal::negative_infinity();
    throw QuadratureNotConverged("fourier table too short for the Szegő limit");
  } catch (const NotPositiveDefinite&) {
    return ExtendedReal::negative_infinity();
  }
}

std::vector<double> quadrature_log_coeffs(const SpectralDensity& f, std::size_t max_n,
                                          const QuadratureOptions& opts) {
  auto at = [&](std::size_t grid) {
    std::vector<CompensatedSum> acc(max_n);
    const double h = kTwoPi / static_cast<double>(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      const double t = -std::numbers::pi + (static_cast<double>(j) + 0.5) * h;
      const double v = eval_density(f, t);
      if (!(v > 0.0)) throw DegenerateProcess();
      const double lv = std::log(v);
      const std::complex<double> w = std::polar(1.0, t);
      std::complex<double> z = w;
      for (std::size_t n = 0; n < max_n; ++n) {
        acc[n].add(lv * z.real());
        z *= w;
      }
    }
    std::vector<double> out(max_n);
    for (std::size_t n = 0; n < max_n; ++n) out[n] = acc[n].value() / static_cast<double>(grid);
    return out;
  };
  std::size_t grid = std::max<std::size_t>(opts.initial_grid, 4 * (max_n + 1));
  grid = std::bit_ceil(grid);
  auto prev = at(grid);
  while (grid < opts.max_grid) {
    grid *= 2;
    auto cur = at(grid);
    double diff = 0.0;
    for (std::size_t n = 0; n < max_n; ++n) diff = std::max(diff, std::abs(cur[n] - prev[n]));
    if (diff < opts.tolerance) return cur;
    prev = std::move(cur);
  }
  throw QuadratureNotConverged("log-density Fourier coefficients did not stabilize");
}

}  // namespace

// ---------------------------------------------------------------------------

double TrigSymbol::modulus_squared(double t) const {
  std::complex<double> s = 0.0;
  const std::complex<double> w = std::polar(1.0, t);
  std::complex<double> z = 1.0;
  for (double c : coeffs) {
    s += c * z;
    z *= w;
  }
  return std::norm(s);
}

bool TrigSymbol::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

AutocovarianceSequence::AutocovarianceSequence(std::vector<double> values, Origin origin,
                                               std::size_t grid_size)
    : values_(std::move(values)), origin_(origin), grid_size_(grid_size) {
  if (values_.empty()) throw DimensionMismatch("autocovariance sequence needs r(0)");
}

double AutocovarianceSequence::operator[](std::ptrdiff_t lag) const {
  return values_.at(static_cast<std::size_t>(lag < 0 ? -lag : lag));
}

// ---------------------------------------------------------------------------

template <class T>
SpectralDensity SpectralDensity::make(T&& value) {
  return SpectralDensity(std::make_shared<const Node>(Node{std::forward<T>(value)}));
}

SpectralDensity SpectralDensity::white(double c) {
  if (!(c > 0.0) || !finite(c)) throw ConfigError("white: level must be positive");
  return make(density::White{c});
}

SpectralDensity SpectralDensity::poisson(double r) {
  if (!(std::abs(r) < 1.0)) throw ConfigError("poisson: need |r| < 1");
  return make(density::PoissonKernel{r});
}

SpectralDensity SpectralDensity::moving_average(std::vector<double> coeffs) {
  if (coeffs.empty() || std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; })) {
    throw ConfigError("ma: coefficients must not all vanish");
  }
  if (!std::all_of(coeffs.begin(), coeffs.end(), finite)) throw ConfigError("ma: non-finite coefficient");
  return make(density::MovingAverage{std::move(coeffs)});
}

SpectralDensity SpectralDensity::moving_average_normalized(std::vector<double> coeffs) {
  const double norm2 = std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0);
  if (!(norm2 > 0.0)) throw ConfigError("ma: coefficients must not all vanish");
  const double s = 1.0 / std::sqrt(norm2);
  for (double& c : coeffs) c *= s;
  return moving_average(std::move(coeffs));
}

SpectralDensity SpectralDensity::autoregressive(std::vector<double> coeffs, double innovation_variance) {
  if (!(innovation_variance > 0.0) || !finite(innovation_variance)) {
    throw ConfigError("ar: innovation variance must be positive");
  }
  ar_reflection_coefficients(coeffs);  // validates stationarity
  return make(density::AutoRegressive{std::move(coeffs), innovation_variance});
}

SpectralDensity SpectralDensity::power_singular(double alpha, double scale) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("power_singular: need 0 < alpha < 1/2");
  if (!(scale > 0.0) || !finite(scale)) throw ConfigError("power_singular: scale must be positive");
  return make(density::PowerSingular{alpha, scale});
}

SpectralDensity SpectralDensity::fourier_table(std::vector<double> r) {
  if (r.empty() || !(r[0] > 0.0)) throw ConfigError("fourier_table: need r(0) > 0");
  if (!std::all_of(r.begin(), r.end(), finite)) throw ConfigError("fourier_table: non-finite entry");
  return make(density::FourierTable{std::move(r)});
}

SpectralDensity SpectralDensity::scaled(double c, SpectralDensity f) {
  if (!(c > 0.0) || !finite(c)) throw ConfigError("scaled: factor must be positive");
  return make(density::Scaled{c, std::move(f)});
}

SpectralDensity SpectralDensity::sum(SpectralDensity a, SpectralDensity b) {
  return make(density::Sum{std::move(a), std::move(b)});
}

SpectralDensity SpectralDensity::filtered(TrigSymbol g, SpectralDensity f) {
  if (g.coeffs.empty() || g.is_zero()) throw ZeroSymbol();
  return make(density::FilterProduct{std::move(g), std::move(f)});
}

std::string SpectralDensity::describe() const {
  std::ostringstream os;
  os.precision(10);
  std::visit(overloaded{
                 [&](const density::White& w) { os << "white(" << w.c << ")"; },
                 [&](const density::PoissonKernel& p) { os << "poisson(" << p.r << ")"; },
                 [&](const density::MovingAverage& m) { os << "ma[" << join(m.coeffs) << "]"; },
                 [&](const density::AutoRegressive& a) {
                   os << "ar[" << join(a.coeffs) << ";" << a.innovation_variance << "]";
                 },
                 [&](const density::PowerSingular& p) {
                   os << "power_singular(" << p.alpha << "," << p.scale << ")";
                 },
                 [&](const density::FourierTable& t) { os << "fourier_table[" << t.r.size() << "]"; },
                 [&](const density::Scaled& s) { os << "scaled(" << s.c << "," << s.f.describe() << ")"; },
                 [&](const density::Sum& s) { os << "sum(" << s.a.describe() << "," << s.b.describe() << ")"; },
                 [&](const density::FilterProduct& f) {
                   os << "filter([" << join(f.g.coeffs) << "]," << f.f.describe() << ")";
                 },
             },
             node());
  return os.str();
}

// ---------------------------------------------------------------------------

double eval_density(const SpectralDensity& f, double t) {
  return std::visit(
      overloaded{
          [](const density::White& w) { return w.c; },
          [&](const density::PoissonKernel& p) {
            return (1.0 - p.r * p.r) / (1.0 - 2.0 * p.r * std::cos(t) + p.r * p.r);
          },
          [&](const density::MovingAverage& m) { return TrigSymbol{m.coeffs}.modulus_squared(t); },
          [&](const density::AutoRegressive& a) {
            std::vector<double> poly(a.coeffs.size() + 1);
            poly[0] = 1.0;
            for (std::size_t k = 0; k < a.coeffs.size(); ++k) poly[k + 1] = -a.coeffs[k];
            return a.innovation_variance / TrigSymbol{std::move(poly)}.modulus_squared(t);
          },
          [&](const density::PowerSingular& p) {
            const double chord = 2.0 * std::abs(std::sin(0.5 * t));  // |1 - e^{it}|
            return p.scale * std::pow(chord, 2.0 * p.alpha);
          },
          [&](const density::FourierTable& tab) {
            const double v = table_series(tab.r, t);
            if (v >= 0.0) return v;
            if (v >= -kTableNegativity * tab.r[0]) return 0.0;
            throw EvaluationUnavailable("truncated Fourier series is negative at t=" + std::to_string(t) +
                                        " (table not positive definite or too short)");
          },
          [&](const density::Scaled& s) { return s.c * eval_density(s.f, t); },
          [&](const density::Sum& s) { return eval_density(s.a, t) + eval_density(s.b, t); },
          [&](const density::FilterProduct& fp) { return fp.g.modulus_squared(t) * eval_density(fp.f, t); },
      },
      f.node());
}

AutocovarianceSequence autocovariance(const SpectralDensity& f, std::size_t max_lag) {
  return AutocovarianceSequence(exact_autocovariance(f, max_lag), AutocovarianceSequence::Origin::kClosedForm);
}

AutocovarianceSequence quadrature_autocovariance(const SpectralDensity& f, std::size_t max_lag,
                                                 const QuadratureOptions& opts) {
  const std::size_t lags = max_lag + 1;
  std::vector<CompensatedSum> acc(lags);
  // Adds nodes -π + (j + offset)·h for j < count.
  auto accumulate = [&](std::size_t count, double h, double offset) {
    for (std::size_t j = 0; j < count; ++j) {
      const double t = -std::numbers::pi + (static_cast<double>(j) + offset) * h;
      const double v = eval_density(f, t);
      const std::complex<double> w = std::polar(1.0, t);
      std::complex<double> z = 1.0;
      for (std::size_t n = 0; n < lags; ++n) {
        acc[n].add(v * z.real());
        z *= w;
      }
    }
  };
  auto snapshot = [&](std::size_t grid) {
    std::vector<double> r(lags);
    for (std::size_t n = 0; n < lags; ++n) r[n] = acc[n].value() / static_cast<double>(grid);
    return r;
  };

  if (opts.fixed_grid) {
    accumulate(opts.fixed_grid, kTwoPi / static_cast<double>(opts.fixed_grid), 0.0);
    return AutocovarianceSequence(snapshot(opts.fixed_grid), AutocovarianceSequence::Origin::kQuadrature,
                                  opts.fixed_grid);
  }

  std::size_t grid = std::bit_ceil(std::max<std::size_t>(opts.initial_grid, 4 * lags));
  accumulate(grid, kTwoPi / static_cast<double>(grid), 0.0);
  auto prev = snapshot(grid);
  while (grid < opts.max_grid) {
    // Doubling only adds the midpoints of the current grid.
    accumulate(grid, kTwoPi / static_cast<double>(grid), 0.5);
    grid *= 2;
    auto cur = snapshot(grid);
    double diff = 0.0;
    for (std::size_t n = 0; n < lags; ++n) diff = std::max(diff, std::abs(cur[n] - prev[n]));
    if (diff < opts.tolerance * std::max(1.0, std::abs(cur[0]))) {
      return AutocovarianceSequence(std::move(cur), AutocovarianceSequence::Origin::kQuadrature, grid);
    }
    prev = std::move(cur);
  }
  throw QuadratureNotConverged("autocovariance quadrature did not stabilize at " +
                               std::to_string(opts.max_grid) + " nodes");
}

ExtendedReal quadrature_szego_integral(const SpectralDensity& f, const QuadratureOptions& opts) {
  return log_integral([&](double t) { return eval_density(f, t); }, opts);
}

ExtendedReal szego_integral(const SpectralDensity& f) {
  return std::visit(
      overloaded{
          [](const density::White& w) -> ExtendedReal { return std::log(w.c); },
          [](const density::PoissonKernel& p) -> ExtendedReal { return std::log1p(-p.r * p.r); },
          // Stationary AR polynomials have no zeros in the closed disc, so ∫log|A|² = 0.
          [](const density::AutoRegressive& a) -> ExtendedReal { return std::log(a.innovation_variance); },
          // ∫ log|1 - e^{it}| dλ = 0
          [](const density::PowerSingular& p) -> ExtendedReal { return std::log(p.scale); },
          [](const density::FourierTable& t) { return table_szego(t.r); },
          [](const density::Scaled& s) { return szego_integral(s.f) + std::log(s.c); },
          [](const density::FilterProduct& fp) {
            return szego_integral(fp.f) + 2.0 * log_symbol_integral(fp.g).value();
          },
          [&](const auto&) { return quadrature_szego_integral(f); },
      },
      f.node());
}

std::vector<double> log_density_fourier_coeffs(const SpectralDensity& f, std::size_t max_n) {
  return std::visit(
      overloaded{
          [&](const density::White&) { return std::vector<double>(max_n, 0.0); },
          [&](const density::PoissonKernel& p) {
            std::vector<double> out(max_n);
            double rn = 1.0;
            for (std::size_t n = 1; n <= max_n; ++n) {
              rn *= p.r;
              out[n - 1] = rn / static_cast<double>(n);
            }
            return out;
          },
          [&](const density::PowerSingular& p) {
            std::vector<double> out(max_n);
            for (std::size_t n = 1; n <= max_n; ++n) out[n - 1] = -p.alpha / static_cast<double>(n);
            return out;
          },
          [&](const density::Scaled& s) { return log_density_fourier_coeffs(s.f, max_n); },
          [&](const auto&) {
            if (!szego_integral(f).is_finite()) throw DegenerateProcess();
            return quadrature_log_coeffs(f, max_n, {});
          },
      },
      f.node());
}

ExtendedReal log_symbol_integral(const TrigSymbol& g) {
  if (g.coeffs.empty() || g.is_zero()) throw ZeroSymbol();
  const auto twice = log_integral([&](double t) { return g.modulus_squared(t); }, {});
  return 0.5 * twice;
}

std::vector<double> ar_reflection_coefficients(const std::vector<double>& coeffs) {
  const std::size_t p = coeffs.size();
  std::vector<double> ks(p);
  std::vector<double> a = coeffs;
  std::vector<double> prev;
  for (std::size_t m = p; m >= 1; --m) {
    const double k = a[m - 1];
    if (!finite(k) || !(std::abs(k) < 1.0)) throw ConfigError("ar: polynomial has a pole on or outside the unit circle");
    ks[m - 1] = k;
    prev = a;
    const double denom = (1.0 - k) * (1.0 + k);
    for (std::size_t j = 1; j < m; ++j) a[j - 1] = (prev[j - 1] + k * prev[m - j - 1]) / denom;
    a.resize(m - 1);
  }
  return ks;
}

}  // namespace acent
