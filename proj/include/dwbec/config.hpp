#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwbec/core_model.hpp"

namespace dwbec {

enum class Command { meanfield, evolve, sweep, peaks, oracle_compare };

const char* command_name(Command c);

/// Usage errors. `show_usage` asks the caller to print the usage text.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, bool show_usage = false)
      : std::runtime_error(what), show_usage_(show_usage) {}
  bool show_usage() const noexcept { return show_usage_; }

 private:
  bool show_usage_;
};

/// `min:max:count` on the command line.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 2;
};

struct MeanFieldOptions {
  double n_a = 3.0;
  double n_b = 3.0;
  double dt = 1e-4;
  double t_end = 10.0;
  double epsilon = 1e-3;
  std::size_t stride = 100;
};

struct OracleOptions {
  int n_a = 1;
  int n_b = 1;
};

struct RunConfig {
  Command command = Command::evolve;
  ModelParams params;
  GridSpec omega_grid{0.5, 2.0, 61};
  GridSpec time_grid{0.0, 200.0, 2001};
  MeanFieldOptions meanfield;
  OracleOptions oracle;
  int n_peaks = 3;
  double t_max = 0.0;  // 0 selects a window covering n_peaks formula peaks
  int threads = 0;
  std::string output_path;

  /// Single line echoing every resolved value, used as the CSV metadata line.
  std::string describe() const;
  /// Throws ConfigError on grid or parameter constraints.
  void validate() const;
};

/// Parses `args` (program name excluded). The first argument is the command.
/// Values from `--config FILE` (or `file_text`, when given) are applied
/// first; command-line flags override them.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& file_text = std::nullopt);

std::string usage_text();

/// Executes the command, writing its CSV and a one-line summary to `log`.
/// Returns 0 on success, 1 on numerical or I/O failure.
int run(const RunConfig& cfg, std::ostream& log);

/// parse_config + run with exit codes 0/1/2; errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dwbec
