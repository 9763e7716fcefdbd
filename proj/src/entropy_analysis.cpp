#include "acent/entropy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "acent/error.hpp"
#include "acent/numeric.hpp"

namespace acent {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json to_json(const ExtendedReal& v) {
  if (v.is_finite()) return v.value();
  return "-inf";
}

}  // namespace

double kl_to_standard_gaussian(const GaussianProcessModel& model, std::size_t n) {
  const auto fact = model.factorization(n);
  const double nd = static_cast<double>(n);
  return 0.5 * (nd * model.variance() - nd - log_det(*fact, n));
}

double kl_to_marginal_product(const GaussianProcessModel& model, std::size_t n) {
  const auto fact = model.factorization(n);
  return 0.5 * (static_cast<double>(n) * std::log(model.variance()) - log_det(*fact, n));
}

double block_mutual_information(const GaussianProcessModel& model, std::size_t n, std::size_t p) {
  const auto fact = model.factorization(n + p);
  return 0.5 * (log_det(*fact, n) + log_det(*fact, p) - log_det(*fact, n + p));
}

double markov_defect(const GaussianProcessModel& model, std::size_t p) {
  const double s = model.szego().value();
  const auto fact = model.factorization(p + 1);
  // H_{p+1} − H_p = ½ log(2πe) + ½ log σ²_p
  return 0.5 * (std::log(fact->innovation_variance(p)) - s);
}

double independence_defect(const GaussianProcessModel& model) { return markov_defect(model, 0); }

double pinsker_entropy_rate(const GaussianProcessModel& model) {
  return 0.5 * (model.variance() - 1.0 - model.szego().value());
}

double information_stability_gap(const GaussianProcessModel& model, std::size_t n) {
  const auto fact = model.factorization(2 * n);
  const double nd = static_cast<double>(n);
  return 0.5 * (log_det(*fact, n) / nd - log_det(*fact, 2 * n) / (2.0 * nd));
}

DyadicDecomposition dyadic_decomposition(const GaussianProcessModel& model, std::size_t max_level) {
  const double rate = entropy_rate(model).value();
  const std::size_t top = std::size_t{1} << (max_level + 1);
  const auto fact = model.factorization(top);

  DyadicDecomposition out;
  out.rate = rate;
  const double head = 0.5 * (std::log(kTwoPi) + model.variance()) - kl_to_standard_gaussian(model, 1);
  CompensatedSum tail;
  for (std::size_t p = 0; p <= max_level; ++p) {
    const std::size_t b = std::size_t{1} << p;
    const double t = 0.5 * (2.0 * log_det(*fact, b) - log_det(*fact, 2 * b));
    out.terms.push_back(t);
    tail.add(std::ldexp(t, -static_cast<int>(p)));
    out.reconstructions.push_back(head - 0.5 * tail.value());
  }
  out.residual = std::abs(out.reconstructions.back() - rate);
  return out;
}

EntropyReport build_entropy_report(const GaussianProcessModel& model, const std::vector<std::size_t>& n_grid,
                                   const std::vector<std::size_t>& mi_grid, std::size_t dyadic_level) {
  EntropyReport rep;
  rep.model_id = model.id();
  rep.variance = model.variance();
  rep.szego = model.szego();
  rep.rate = entropy_rate(model);

  std::size_t need = 2;
  for (auto n : n_grid) need = std::max(need, n);
  for (auto a : mi_grid) {
    for (auto b : mi_grid) need = std::max(need, a + b);
  }
  if (rep.rate.is_finite()) need = std::max(need, std::size_t{1} << (dyadic_level + 1));
  const auto fact = model.factorization(need);

  const double r0 = model.variance();
  for (auto n : n_grid) {
    if (n == 0) throw ConfigError("report: n-grid entries must be positive");
    EntropyRow row{n, block_entropy(model, n), kl_to_standard_gaussian(model, n), kl_to_marginal_product(model, n),
                   std::nullopt};
    if (rep.rate.is_finite()) row.markov_defect = markov_defect(model, n - 1);
    const double nd = static_cast<double>(n);
    const double eq = -row.kl_gauss + 0.5 * nd * (std::log(kTwoPi) + r0);
    rep.max_kl_identity_error = std::max(rep.max_kl_identity_error, std::abs(eq - row.block_entropy));
    rep.rows.push_back(row);
  }
  for (auto n : mi_grid) {
    for (auto p : mi_grid) {
      const double mi = block_mutual_information(model, n, p);
      const double direct = block_entropy(model, n) + block_entropy(model, p) - block_entropy(model, n + p);
      rep.max_mi_identity_error = std::max(rep.max_mi_identity_error, std::abs(mi - direct));
      rep.mutual_information.push_back({n, p, mi});
    }
  }
  if (rep.rate.is_finite()) {
    rep.independence_defect = independence_defect(model);
    rep.pinsker_rate = pinsker_entropy_rate(model);
    rep.dyadic = dyadic_decomposition(model, dyadic_level);
  }
  return rep;
}

std::string entropy_table_csv(const EntropyReport& report) {
  std::ostringstream os;
  os << "n,H_n,H_n_over_n,KL_gauss,KL_prod,markov_defect\n";
  for (const auto& row : report.rows) {
    os << row.n << ',' << fmt(row.block_entropy) << ',' << fmt(row.block_entropy / static_cast<double>(row.n))
       << ',' << fmt(row.kl_gauss) << ',' << fmt(row.kl_product) << ','
       << (row.markov_defect ? fmt(*row.markov_defect) : "NA") << '\n';
  }
  return os.str();
}

std::string mutual_information_csv(const EntropyReport& report) {
  std::ostringstream os;
  os << "n,p,I\n";
  for (const auto& c : report.mutual_information) os << c.n << ',' << c.p << ',' << fmt(c.value) << '\n';
  return os.str();
}

std::string entropy_summary_json(const EntropyReport& report) {
  nlohmann::json j;
  j["model"] = report.model_id;
  j["variance"] = report.variance;
  j["szego_integral"] = to_json(report.szego);
  j["entropy_rate"] = to_json(report.rate);
  j["max_entropy_gap"] = report.rate.is_finite()
                             ? nlohmann::json(0.5 * (std::log(kTwoPi) + report.variance) - report.rate.value())
                             : nlohmann::json("inf");
  j["independence_defect"] = report.independence_defect ? nlohmann::json(*report.independence_defect) : nullptr;
  j["pinsker_rate"] = report.pinsker_rate ? nlohmann::json(*report.pinsker_rate) : nullptr;
  if (report.dyadic) {
    j["dyadic"] = {{"terms", report.dyadic->terms},
                   {"reconstruction", report.dyadic->reconstructions.back()},
                   {"residual", report.dyadic->residual}};
  }
  j["identity_errors"] = {{"kl_gauss", report.max_kl_identity_error}, {"mutual_information", report.max_mi_identity_error}};
  return j.dump(2);
}

}  // namespace acent
