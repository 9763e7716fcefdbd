#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acent/cli.hpp"
#include "acent/error.hpp"

namespace {

void add_common_options(CLI::App* sub, acent::RunConfig& cfg, std::string& grid) {
  sub->add_option("--model", cfg.model, "inline model, e.g. poisson:0.5 or poisson:0.5*white:1 for a field");
  sub->add_option("--model-file", cfg.model_file, "JSON model description");
  sub->add_option("--n", grid, "comma-separated n-grid");
  sub->add_option("--m", cfg.ensemble_size, "ensemble size");
  sub->add_option("--seed", cfg.seed, "base seed");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json");
  sub->add_option("--workers", cfg.workers, "worker threads");
  sub->add_flag("--assert", cfg.assert_checks, "exit 1 when a check fails");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy rates and Shannon-McMillan-Breiman experiments for stationary Gaussian processes"};
  app.require_subcommand(1);
  acent::RunConfig cfg;
  std::string grid;
  std::string symbol;

  add_common_options(app.add_subcommand("rate", "entropy rate, Szegő integral and maximum-entropy gap"), cfg, grid);
  add_common_options(app.add_subcommand("report", "block entropies, KL divergences and mutual information"), cfg, grid);
  auto* smb = app.add_subcommand("smb", "1-D ensemble of normalized information along sample paths");
  add_common_options(smb, cfg, grid);
  smb->add_option("--transform", cfg.transform, "coordinatewise map: sine:eps or scale:c");
  add_common_options(app.add_subcommand("smb2d", "2-D ensemble on square blocks of a separable field"), cfg, grid);
  add_common_options(app.add_subcommand("predict", "finite-past prediction gaps and strong-Szegő sums"), cfg, grid);
  auto* filter = app.add_subcommand("filter", "entropy rate of a filtered process against the log-symbol integral");
  add_common_options(filter, cfg, grid);
  filter->add_option("--symbol", symbol, "filter coefficients g0,g1,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return acent::kExitConfig;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!grid.empty()) cfg.n_grid = acent::parse_grid(grid);
    if (!symbol.empty()) {
      std::stringstream ss(symbol);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        cfg.symbol.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      }
    }
  } catch (const acent::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return acent::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: bad --symbol entry '" << e.what() << "'\n";
    return acent::kExitConfig;
  }
  return acent::run_command(cfg, std::cout, std::cerr);
}
