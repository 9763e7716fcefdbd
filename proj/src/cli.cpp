#include "acent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "acent/entropy_analysis.hpp"
#include "acent/error.hpp"
#include "acent/field2d.hpp"
#include "acent/model_spec.hpp"
#include "acent/numeric.hpp"
#include "acent/prediction.hpp"
#include "acent/smb.hpp"

namespace acent {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json to_json(const ExtendedReal& x) { return x.is_finite() ? json(x.value()) : json("-inf"); }

double to_double(const ExtendedReal& x) { return x.value_or(-INFINITY); }

ModelSpec resolve_model(const RunConfig& cfg) {
  if (cfg.model.has_value() == cfg.model_file.has_value()) {
    throw ConfigError("give exactly one of --model and --model-file");
  }
  if (cfg.model_file) return load_model_file(*cfg.model_file);
  const auto star = cfg.model->find('*');
  if (star == std::string::npos) return GaussianProcessModel(parse_inline_density(*cfg.model));
  return SeparableFieldModel(GaussianProcessModel(parse_inline_density(cfg.model->substr(0, star))),
                             GaussianProcessModel(parse_inline_density(cfg.model->substr(star + 1))));
}

const GaussianProcessModel& require_1d(const ModelSpec& spec, const std::string& command) {
  if (const auto* m = std::get_if<GaussianProcessModel>(&spec)) return *m;
  throw ConfigError(command + " needs a 1-D model, got a separable field");
}

const SeparableFieldModel& require_2d(const ModelSpec& spec, const std::string& command) {
  if (const auto* m = std::get_if<SeparableFieldModel>(&spec)) return *m;
  throw ConfigError(command + " needs a separable field model");
}

MonotoneMap parse_transform(const std::string& text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  if (kind == "identity" && colon == std::string::npos) return MonotoneMap::identity();
  if (colon == std::string::npos) throw ConfigError("transform must look like sine:eps or scale:c");
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError("cannot parse transform parameter in '" + text + "'");
  }
  try {
    if (kind == "sine") return MonotoneMap::sine_perturbed(v);
    if (kind == "scale") return MonotoneMap::scale(v);
  } catch (const NonMonotone& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown transform '" + kind + "'");
}

json config_json(const RunConfig& cfg, const ModelSpec& spec, const std::vector<std::size_t>& grid,
                 std::optional<std::size_t> ensemble) {
  json j;
  j["command"] = cfg.command;
  j["model"] = model_to_json(spec);
  j["n"] = grid;
  if (ensemble) j["m"] = *ensemble;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["format"] = cfg.format;
  j["assert"] = cfg.assert_checks;
  if (!cfg.symbol.empty()) j["symbol"] = cfg.symbol;
  if (cfg.transform) j["transform"] = *cfg.transform;
  return j;
}

struct Output {
  std::string body;
  /// Extra files written next to --out (suffix, contents).
  std::vector<std::pair<std::string, std::string>> extras;
  bool checks_passed = true;
};

std::vector<std::size_t> grid_or(const RunConfig& cfg, std::vector<std::size_t> fallback) {
  return cfg.n_grid.empty() ? fallback : cfg.n_grid;
}

Output cmd_rate(const RunConfig& cfg, const ModelSpec& spec) {
  double variance = 0.0;
  ExtendedReal rate = 0.0;
  json szego;
  std::string szego_csv;
  if (const auto* m = std::get_if<GaussianProcessModel>(&spec)) {
    variance = m->variance();
    rate = entropy_rate(*m);
    szego = to_json(m->szego());
    szego_csv = "szego_integral," + fmt(to_double(m->szego())) + "\n";
  } else {
    const auto& fm = std::get<SeparableFieldModel>(spec);
    variance = fm.variance();
    rate = entropy_rate_2d(fm);
    szego = {{"factor_a", to_json(fm.factor_a().szego())}, {"factor_b", to_json(fm.factor_b().szego())}};
    szego_csv = "szego_integral_a," + fmt(to_double(fm.factor_a().szego())) + "\nszego_integral_b," +
                fmt(to_double(fm.factor_b().szego())) + "\n";
  }
  const double bound = 0.5 * (std::log(kTwoPi) + variance);
  const double gap = rate.is_finite() ? bound - rate.value() : INFINITY;

  Output out;
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, spec, {}, std::nullopt);
    j["entropy_rate"] = to_json(rate);
    j["szego_integral"] = szego;
    j["variance"] = variance;
    j["max_entropy_bound"] = bound;
    j["max_entropy_gap"] = rate.is_finite() ? json(gap) : json("inf");
    out.body = j.dump(2) + "\n";
  } else {
    out.body = "quantity,value\nentropy_rate," + fmt(to_double(rate)) + "\n" + szego_csv + "variance," +
               fmt(variance) + "\nmax_entropy_bound," + fmt(bound) + "\nmax_entropy_gap," + fmt(gap) + "\n";
  }
  out.checks_passed = !rate.is_finite() || gap >= -1e-9;
  return out;
}

Output cmd_report(const RunConfig& cfg, const ModelSpec& spec) {
  const auto& model = require_1d(spec, "report");
  const auto grid = grid_or(cfg, {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024});
  std::vector<std::size_t> mi_grid;
  for (std::size_t n : grid) {
    if (n <= 256) mi_grid.push_back(n);
  }
  const auto report = build_entropy_report(model, grid, mi_grid);
  Output out;
  out.checks_passed = report.max_kl_identity_error <= 1e-10 && report.max_mi_identity_error <= 1e-12;
  if (cfg.format == "json") {
    auto j = json::parse(entropy_summary_json(report));
    j["config"] = config_json(cfg, spec, grid, std::nullopt);
    auto rows = json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"n", r.n},
                      {"H_n", r.block_entropy},
                      {"KL_gauss", r.kl_gauss},
                      {"KL_prod", r.kl_product},
                      {"markov_defect", r.markov_defect ? json(*r.markov_defect) : json(nullptr)}});
    }
    j["rows"] = rows;
    auto mi = json::array();
    for (const auto& c : report.mutual_information) mi.push_back({{"n", c.n}, {"p", c.p}, {"I", c.value}});
    j["mutual_information"] = mi;
    out.body = j.dump(2) + "\n";
  } else {
    out.body = entropy_table_csv(report);
    out.extras.emplace_back(".mi.csv", mutual_information_csv(report));
  }
  return out;
}

Output convergence_output(const RunConfig& cfg, const ModelSpec& spec, const ConvergenceReport& rep,
                          const std::vector<std::size_t>& grid) {
  Output out;
  out.checks_passed = rep.all_pass();
  if (cfg.format == "json") {
    auto j = json::parse(convergence_json(rep));
    j["config"] = config_json(cfg, spec, grid, rep.ensemble_size);
    out.body = j.dump(2) + "\n";
  } else {
    out.body = convergence_csv(rep);
  }
  return out;
}

Output cmd_smb(const RunConfig& cfg, const ModelSpec& spec) {
  const auto& model = require_1d(spec, "smb");
  const auto grid = grid_or(cfg, {64, 256, 1024});
  ExperimentOptions opts;
  opts.workers = cfg.workers;
  if (cfg.transform) opts.transform = parse_transform(*cfg.transform);
  const auto rep = smb_experiment(model, grid, cfg.ensemble_size.value_or(200), cfg.seed, opts);
  return convergence_output(cfg, spec, rep, grid);
}

Output cmd_smb2d(const RunConfig& cfg, const ModelSpec& spec) {
  const auto& fm = require_2d(spec, "smb2d");
  if (cfg.transform) throw ConfigError("smb2d does not take --transform");
  const auto grid = grid_or(cfg, {16, 32, 64});
  ExperimentOptions opts;
  opts.workers = cfg.workers;
  const auto rep = smb2d_experiment(fm, grid, cfg.ensemble_size.value_or(50), cfg.seed, opts);
  auto out = convergence_output(cfg, spec, rep, grid);
  // the mean absolute deviation from the rate must shrink along the grid
  for (std::size_t g = 1; g < rep.rows.size(); ++g) {
    if (!(rep.rows[g].mad < rep.rows[g - 1].mad)) out.checks_passed = false;
  }
  return out;
}

Output cmd_predict(const RunConfig& cfg, const ModelSpec& spec) {
  const auto& model = require_1d(spec, "predict");
  const auto grid = grid_or(cfg, {1024});
  const auto diag = prediction_gap_series(model, grid.back());
  Output out;
  for (std::size_t n = 0; n < diag.delta.size(); ++n) {
    if (diag.delta[n] < 0.0 || (n > 0 && diag.delta[n] > diag.delta[n - 1] + 1e-15)) out.checks_passed = false;
  }
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, spec, grid, std::nullopt);
    j["model"] = diag.model_id;
    j["sigma2_inf"] = diag.sigma2_inf;
    j["sigma2"] = diag.sigma2;
    j["delta"] = diag.delta;
    j["S_N"] = diag.gap_sums;
    j["T_N"] = diag.strong_szego_sums;
    out.body = j.dump(2) + "\n";
  } else {
    out.body = prediction_csv(diag);
  }
  return out;
}

Output cmd_filter(const RunConfig& cfg, const ModelSpec& spec) {
  const auto& base = require_1d(spec, "filter");
  if (cfg.symbol.empty()) throw ConfigError("filter needs --symbol g0,g1,...");
  const TrigSymbol g{cfg.symbol};
  const auto filtered = filtered_model(base, g);
  const auto se_base = entropy_rate(base);
  const auto se_filtered = entropy_rate(filtered);
  const double log_g = log_symbol_integral(g).value();
  Output out;
  std::optional<double> residual;
  if (se_base.is_finite() && se_filtered.is_finite()) {
    residual = std::abs(se_filtered.value() - se_base.value() - log_g);
    out.checks_passed = *residual <= 1e-6;
  } else {
    out.checks_passed = se_base.is_finite() == se_filtered.is_finite();
  }
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, spec, {}, std::nullopt);
    j["filtered_model"] = density_to_json(filtered.density());
    j["entropy_rate_base"] = to_json(se_base);
    j["entropy_rate_filtered"] = to_json(se_filtered);
    j["log_symbol_integral"] = log_g;
    j["lhs"] = se_filtered.is_finite() && se_base.is_finite() ? json(se_filtered.value() - se_base.value()) : json(nullptr);
    j["rhs"] = log_g;
    j["residual"] = residual ? json(*residual) : json(nullptr);
    out.body = j.dump(2) + "\n";
  } else {
    out.body = "quantity,value\nentropy_rate_base," + fmt(to_double(se_base)) + "\nentropy_rate_filtered," +
               fmt(to_double(se_filtered)) + "\nlog_symbol_integral," + fmt(log_g) + "\nresidual," +
               (residual ? fmt(*residual) : std::string("NA")) + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << contents;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (item.empty() || item[0] == '-' || item[0] == '+') throw std::invalid_argument("sign");
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad --n entry '" + item + "'");
    }
    if (used != item.size() || v == 0) throw ConfigError("bad --n entry '" + item + "'");
    if (!out.empty() && v <= out.back()) throw ConfigError("--n must be strictly increasing");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ConfigError("--n is empty");
  return out;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    if (cfg.workers == 0) throw ConfigError("--workers must be positive");
    if (cfg.ensemble_size && *cfg.ensemble_size < 1) throw ConfigError("--m must be at least 1");
    const auto spec = resolve_model(cfg);
    Output result;
    if (cfg.command == "rate") {
      result = cmd_rate(cfg, spec);
    } else if (cfg.command == "report") {
      result = cmd_report(cfg, spec);
    } else if (cfg.command == "smb") {
      result = cmd_smb(cfg, spec);
    } else if (cfg.command == "smb2d") {
      result = cmd_smb2d(cfg, spec);
    } else if (cfg.command == "predict") {
      result = cmd_predict(cfg, spec);
    } else if (cfg.command == "filter") {
      result = cmd_filter(cfg, spec);
    } else {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.out) {
      write_file(*cfg.out, result.body);
      for (const auto& [suffix, contents] : result.extras) write_file(*cfg.out + suffix, contents);
    } else {
      out << result.body;
    }
    if (cfg.assert_checks && !result.checks_passed) {
      err << cfg.command << ": assertion failed\n";
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace acent
