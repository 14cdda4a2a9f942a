#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubent/eigensolver.hpp"
#include "hubent/model_real.hpp"
#include "hubent/sweep.hpp"

namespace hubent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  ModelParams model;
  std::vector<int> block_sizes;  // empty: subcommand default
  Range grid_u = Range::single(0.0);
  Range grid_v = Range::single(0.0);
  bool has_grid_u = false;
  bool has_grid_v = false;
  double k = 0.0;
  bool has_k = false;
  double h = 0.05;
  std::vector<int> sizes{8, 10};
  ScanAxis axis = ScanAxis::U;
  SolverOptions solver;
  int threads = 1;
  std::string out;     // empty: standard output
  std::string format = "csv";
  std::string plot;    // optional gnuplot script path (sweep)
  bool help = false;
  std::string help_text;
};

[[nodiscard]] const std::vector<std::string>& subcommands();

/// Parses and validates the command line; throws UsageError. A flat
/// key=value file given with --config may set any flag; flags on the
/// command line win.
[[nodiscard]] RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed config; returns the process exit code.
[[nodiscard]] int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit code 2.
[[nodiscard]] int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hubent::cli
