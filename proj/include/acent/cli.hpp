#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace acent {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitNumerical = 2, kExitConfig = 3 };

/// One resolved command-line invocation.
struct RunConfig {
  std::string command;
  /// Inline model (see parse_inline_density); "A*B" builds the separable field A⊗B.
  std::optional<std::string> model;
  std::optional<std::string> model_file;
  std::vector<std::size_t> n_grid;
  std::optional<std::size_t> ensemble_size;
  std::uint64_t seed = 7;
  std::optional<std::string> out;
  std::string format = "csv";
  std::size_t workers = 1;
  bool assert_checks = false;
  /// filter: symbol coefficients g_0, g_1, ...
  std::vector<double> symbol;
  /// smb: coordinatewise map, "sine:eps" or "scale:c".
  std::optional<std::string> transform;
};

/// Comma-separated positive integers, e.g. "64,256,1024". Throws ConfigError.
std::vector<std::size_t> parse_grid(const std::string& text);

/// Runs one command, writing the result to `out` (or to config.out when set) and
/// diagnostics to `err`. Maps ConfigError to 3, NumericalError to 2 and failed
/// --assert checks to 1.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace acent
