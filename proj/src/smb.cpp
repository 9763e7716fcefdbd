#include "acent/smb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

namespace {

void validate_grid(const std::vector<std::size_t>& n_grid, std::size_t ensemble_size) {
  if (n_grid.empty()) throw ConfigError("n-grid is empty");
  if (n_grid.front() == 0) throw ConfigError("n-grid entries must be positive");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw ConfigError("n-grid must be strictly increasing");
  }
  if (ensemble_size < 2) throw ConfigError("ensemble size must be at least 2");
}

/// Runs `sample(index)` for every ensemble member, split round-robin across workers.
/// Results land in seed order so aggregation does not depend on the worker count.
std::vector<std::vector<double>> run_ensemble(std::size_t members, std::size_t workers,
                                              const std::function<std::vector<double>(std::size_t)>& sample) {
  std::vector<std::vector<double>> out(members);
  workers = std::clamp<std::size_t>(workers, 1, members);
  if (workers == 1) {
    for (std::size_t i = 0; i < members; ++i) out[i] = sample(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < members; i += workers) out[i] = sample(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ConvergenceRow summarize(std::size_t n, const std::vector<double>& values, double target, double expectation,
                         std::optional<double> theoretical_sd, double band_sd) {
  const auto m = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / m;
  std::vector<double> sq(values.size());
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    sq[i] = (values[i] - mean) * (values[i] - mean);
    dev[i] = std::abs(values[i] - target);
  }
  const double sd = std::sqrt(pairwise_sum(sq) / (m - 1.0));
  const double mad = pairwise_sum(dev) / m;
  bool pass = std::abs(mean - expectation) <= 4.0 * band_sd / std::sqrt(m);
  if (theoretical_sd) pass = pass && sd >= 0.7 * *theoretical_sd && sd <= 1.3 * *theoretical_sd;
  return {n, mean, sd, mad, target, expectation, theoretical_sd, pass};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::vector<double> information_path(const GaussianProcessModel& model, const Trajectory& traj) {
  const auto& x = traj.latent();
  const std::size_t n = x.size();
  std::vector<double> info(n);
  if (n == 0) return info;
  const auto fact = model.factorization(n);
  const double half_log_2pi = 0.5 * std::log(kTwoPi);
  PredictorSweep sweep(*fact);
  CompensatedSum acc;
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) sweep.advance();
    const double var = sweep.variance();
    const double e = x[m] - sweep.predict(x);
    acc.add(half_log_2pi + 0.5 * std::log(var) + 0.5 * e * e / var);
    if (traj.transform) acc.add(traj.transform->log_derivative[m]);
    info[m] = acc.value();
  }
  return info;
}

double innovation_average(const GaussianProcessModel& model, const Trajectory& traj) {
  const auto& x = traj.latent();
  const std::size_t n = x.size();
  if (n < 2) throw ConfigError("innovation_average needs a path of length >= 2");
  const auto fact = model.factorization(n);
  PredictorSweep sweep(*fact);
  CompensatedSum acc;
  for (std::size_t m = 1; m < n; ++m) {
    sweep.advance();
    const double e = x[m] - sweep.predict(x);
    acc.add(e * e / sweep.variance());
  }
  return acc.value() / static_cast<double>(n - 1);
}

double information_field(const SeparableFieldModel& fm, const FieldSample& sample) {
  const double nd = static_cast<double>(sample.n);
  return -log_field_density(fm, sample.values, sample.n) / (nd * nd);
}

bool ConvergenceReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.pass; });
}

ConvergenceReport smb_experiment(const GaussianProcessModel& model, const std::vector<std::size_t>& n_grid,
                                 std::size_t ensemble_size, std::uint64_t base_seed, const ExperimentOptions& opts) {
  validate_grid(n_grid, ensemble_size);
  const double rate = entropy_rate(model).value();
  const std::size_t n_max = n_grid.back();
  model.factorization(n_max);  // build once before the workers start

  const double shift = opts.transform ? expected_log_derivative(*opts.transform, model.variance()) : 0.0;
  const auto per_seed = run_ensemble(ensemble_size, opts.workers, [&](std::size_t i) {
    auto traj = sample_path(model, n_max, stream_seed(base_seed, i));
    if (opts.transform) traj = transform_path(traj, *opts.transform);
    const auto info = information_path(model, traj);
    std::vector<double> out(n_grid.size());
    for (std::size_t g = 0; g < n_grid.size(); ++g) out[g] = info[n_grid[g] - 1] / static_cast<double>(n_grid[g]);
    return out;
  });

  ConvergenceReport rep{model.id(), 1, ensemble_size, base_seed, opts.workers,
                        opts.transform ? opts.transform->name : "", {}};
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const std::size_t n = n_grid[g];
    std::vector<double> values(ensemble_size);
    for (std::size_t i = 0; i < ensemble_size; ++i) values[i] = per_seed[i][g];
    const double sd_th = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    const double expectation = block_entropy(model, n) / static_cast<double>(n) + shift;
    rep.rows.push_back(summarize(n, values, rate + shift, expectation,
                                 opts.transform ? std::nullopt : std::optional<double>(sd_th), sd_th));
  }
  return rep;
}

ConvergenceReport smb2d_experiment(const SeparableFieldModel& fm, const std::vector<std::size_t>& n_grid,
                                   std::size_t ensemble_size, std::uint64_t base_seed, const ExperimentOptions& opts) {
  validate_grid(n_grid, ensemble_size);
  if (opts.transform) throw ConfigError("smb2d: transforms are supported for 1-D paths only");
  const double rate = entropy_rate_2d(fm).value();
  const std::size_t n_max = n_grid.back();
  fm.factor_a().factorization(n_max);
  fm.factor_b().factorization(n_max);

  const auto per_seed = run_ensemble(ensemble_size, opts.workers, [&](std::size_t i) {
    const auto field = sample_field(fm, n_max, stream_seed(base_seed, i));
    std::vector<double> out(n_grid.size());
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
      const std::size_t n = n_grid[g];
      FieldSample corner{n, std::vector<double>(n * n), field.model_id, field.seed};
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) corner.values[s * n + t] = field.at(s, t);
      }
      out[g] = information_field(fm, corner);
    }
    return out;
  });

  ConvergenceReport rep{fm.id(), 2, ensemble_size, base_seed, opts.workers, "", {}};
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const std::size_t n = n_grid[g];
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    std::vector<double> values(ensemble_size);
    for (std::size_t i = 0; i < ensemble_size; ++i) values[i] = per_seed[i][g];
    const double sd_th = 1.0 / std::sqrt(2.0 * n2);
    rep.rows.push_back(summarize(n, values, rate, block_entropy_2d(fm, n) / n2, sd_th, sd_th));
  }
  return rep;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "n,mean,sd,se_exact,hn_over_n,theoretical_sd,pass\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << fmt(r.mean) << ',' << fmt(r.sd) << ',' << fmt(r.se_exact) << ',' << fmt(r.hn_over_n) << ','
       << (r.theoretical_sd ? fmt(*r.theoretical_sd) : "NA") << ',' << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string convergence_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["model"] = report.model_id;
  j["dimension"] = report.dimension;
  j["ensemble_size"] = report.ensemble_size;
  j["base_seed"] = report.base_seed;
  j["workers"] = report.workers;
  if (!report.transform.empty()) j["transform"] = report.transform;
  j["all_pass"] = report.all_pass();
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"mean", r.mean},
                    {"sd", r.sd},
                    {"mad", r.mad},
                    {"se_exact", r.se_exact},
                    {"hn_over_n", r.hn_over_n},
                    {"theoretical_sd", r.theoretical_sd ? nlohmann::json(*r.theoretical_sd) : nullptr},
                    {"pass", r.pass}});
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace acent
