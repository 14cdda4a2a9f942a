#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hubent/eigensolver.hpp"
#include "hubent/model_real.hpp"

namespace hubent {

/// Inclusive arithmetic range min:max:step. Values are min + i * step, so
/// no rounding error accumulates along the axis.
struct Range {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  [[nodiscard]] static Range single(double v) { return {v, v, 1.0}; }
  /// Parses "min:max:step" or a single number.
  [[nodiscard]] static Range parse(std::string_view text);
  void validate() const;
  [[nodiscard]] std::vector<double> values() const;
};

struct SweepSpec {
  int L = 8;
  double t = 1.0;
  Boundary bc = Boundary::automatic;
  Range u{-4.0, 4.0, 0.1};
  Range v{-2.0, 2.0, 0.1};
  std::vector<int> block_sizes{3};
  SolverOptions solver;
  int threads = 1;

  void validate() const;
};

struct SweepRow {
  int L = 0;
  int l = 0;
  double U = 0.0;
  double V = 0.0;
  Boundary bc = Boundary::periodic;  // resolved
  double energy = 0.0;
  double gap = 0.0;
  double entropy = 0.0;
  bool degenerate = false;
  std::string dominant;
  std::string error;  // non-empty for failed points

  [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

/// Called once per finished point; may be invoked from worker threads.
using ProgressFn = std::function<void(std::string_view)>;

/// One ground-state solve and one entropy per block size (ascending l).
[[nodiscard]] std::vector<SweepRow> run_point(const ModelParams& params,
                                              std::span<const int> block_sizes,
                                              const SolverOptions& opts = {});

/// Grid rows in U-outer, V-inner order, then ascending l. Failed points
/// produce error rows instead of aborting.
[[nodiscard]] std::vector<SweepRow> run_grid(const SweepSpec& spec, const ProgressFn& progress = {});

struct DerivativePoint {
  double x = 0.0;
  double derivative = 0.0;
};

/// (f(x + h) - f(x - h)) / 2h at every x, evaluating each distinct abscissa once.
[[nodiscard]] std::vector<DerivativePoint> central_derivative(
    const std::function<double(double)>& f, std::span<const double> xs, double h);

[[nodiscard]] std::vector<DerivativePoint> derivative_scan(const ModelParams& base, int l,
                                                           const Range& v_range, double h = 0.05,
                                                           const SolverOptions& opts = {},
                                                           int threads = 1);

struct ScalingFit {
  double slope = 0.0;      // a
  double intercept = 0.0;  // b
  double r2 = 0.0;
};

struct BlockEntropy {
  int l = 0;
  double entropy = 0.0;
};

/// Least squares of E(l) against log2(l); needs at least three points.
[[nodiscard]] ScalingFit scaling_fit(std::span<const BlockEntropy> points);

enum class ScanAxis { U, V };

struct SizeScanSpec {
  int l = 4;
  std::vector<int> sizes{8, 10};
  ScanAxis axis = ScanAxis::U;
  double fixed = -4.0;  // value of the other coupling
  Range range{0.0, 8.0, 0.25};
  double t = 1.0;
  Boundary bc = Boundary::automatic;
  SolverOptions solver;
  int threads = 1;
};

/// Per-L curves along one axis; sizes outer, axis values inner.
[[nodiscard]] std::vector<SweepRow> size_scan(const SizeScanSpec& spec, const ProgressFn& progress = {});

struct MomentumRow {
  int L = 0;
  int k_index = 0;
  double k = 0.0;
  double U = 0.0;
  double V = 0.0;
  Boundary bc = Boundary::antiperiodic;
  double energy = 0.0;
  double gap = 0.0;
  double entropy = 0.0;
  bool degenerate = false;
  double total_momentum = 0.0;
  std::string error;

  [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

/// Index of the grid momentum nearest to `k`; throws if it is further
/// than 1e-6 away or has no distinct partner -k.
[[nodiscard]] int snap_momentum(int L, Boundary bc, double k);

/// Entropy of the modes {(+k, up), (-k, up), (+k, dn), (-k, dn)} in the
/// momentum-basis ground state, for each V.
[[nodiscard]] std::vector<MomentumRow> momentum_scan(const ModelParams& base, int k_index,
                                                     const Range& v_range,
                                                     const SolverOptions& opts = {},
                                                     int threads = 1,
                                                     const ProgressFn& progress = {});

struct Jump {
  std::size_t index = 0;  // between points index and index + 1
  double magnitude = 0.0;
};

/// |y[i+1] - y[i]| for consecutive points, largest first.
[[nodiscard]] std::vector<Jump> nearest_neighbor_jumps(std::span<const double> ys);

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Output.

/// "%.12g"
[[nodiscard]] std::string format_number(double x);

void write_csv(std::ostream& os, std::span<const SweepRow> rows);
/// One matrix per block size: first row V values, first column U values.
void write_matrix(std::ostream& os, std::span<const SweepRow> rows);
void write_momentum_csv(std::ostream& os, std::span<const MomentumRow> rows);
void write_derivative_csv(std::ostream& os, const ModelParams& base, int l,
                          std::span<const DerivativePoint> points);
/// Gnuplot command file drawing the matrix written by write_matrix.
void write_plot_script(std::ostream& os, const std::string& matrix_path, std::span<const int> block_sizes);

}  // namespace hubent
