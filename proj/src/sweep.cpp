#include "hubent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "hubent/analytic_oracles.hpp"
#include "hubent/model_momentum.hpp"
#include "hubent/rdm_entropy.hpp"

namespace hubent {

namespace {

double parse_double(std::string_view s) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::string point_label(const ModelParams& p) {
  return "L=" + std::to_string(p.L) + " U=" + format_number(p.U) + " V=" + format_number(p.V);
}

}  // namespace

Range Range::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  Range r;
  if (parts.size() == 1) {
    r = single(parse_double(parts[0]));
  } else if (parts.size() == 3) {
    r = {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
  } else {
    throw std::invalid_argument("range must be min:max:step, got '" + std::string(text) + "'");
  }
  r.validate();
  return r;
}

void Range::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  if (!(min <= max)) throw std::invalid_argument("range min must not exceed max");
}

std::vector<double> Range::values() const {
  validate();
  const auto n = static_cast<long>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x = min + static_cast<double>(i) * step;
    // Snap values that are zero up to rounding.
    out.push_back(std::abs(x) < 1e-12 * std::max(1.0, step) ? 0.0 : x);
  }
  return out;
}

void SweepSpec::validate() const {
  ModelParams{L, 0.0, 0.0, t, bc}.validate();
  u.validate();
  v.validate();
  if (block_sizes.empty()) throw std::invalid_argument("at least one block size is required");
  for (int l : block_sizes) {
    if (l < 1 || l > L - 1) throw std::invalid_argument("block sizes must lie in [1, L-1]");
  }
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> run_point(const ModelParams& params, std::span<const int> block_sizes,
                                const SolverOptions& opts) {
  params.validate();
  for (int l : block_sizes) {
    if (l < 1 || l > params.L - 1) {
      throw std::invalid_argument("block size " + std::to_string(l) + " outside [1, L-1]");
    }
  }
  std::vector<int> ls(block_sizes.begin(), block_sizes.end());
  std::sort(ls.begin(), ls.end());

  const SectorBasis basis = enumerate_sector(Sector::half_filled(params.L));
  GroundStateResult gs;
  try {
    gs = ground_state(params, basis, Representation::real_space, opts);
  } catch (const SolverError& e) {
    throw SolverError(point_label(params) + ": " + e.what(), e.best_energy(), e.residual());
  }
  const std::string dominant = classify_config(dominant_config(gs.amplitudes, basis), params.L);

  std::vector<SweepRow> rows;
  for (int l : ls) {
    const auto rdm = reduced_density_matrix(gs, basis, BlockSpec::contiguous_sites(params.L, l));
    SweepRow row;
    row.L = params.L;
    row.l = l;
    row.U = params.U;
    row.V = params.V;
    row.bc = params.resolved_bc();
    row.energy = gs.energy();
    row.gap = gs.gap;
    row.entropy = von_neumann_entropy(rdm);
    row.degenerate = gs.degenerate;
    row.dominant = dominant;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::vector<SweepRow> error_rows(const ModelParams& p, std::span<const int> ls, const std::string& msg) {
  std::vector<SweepRow> rows;
  for (int l : ls) {
    SweepRow r;
    r.L = p.L;
    r.l = l;
    r.U = p.U;
    r.V = p.V;
    r.bc = p.resolved_bc();
    r.energy = r.gap = r.entropy = std::numeric_limits<double>::quiet_NaN();
    r.dominant = "error";
    r.error = msg;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Solves every point on `threads` workers and concatenates rows in input order.
std::vector<SweepRow> solve_points(const std::vector<ModelParams>& points, std::span<const int> ls,
                                   const SolverOptions& opts, int threads, const ProgressFn& progress) {
  std::vector<std::vector<SweepRow>> per_point(points.size());
  std::vector<int> sorted(ls.begin(), ls.end());
  std::sort(sorted.begin(), sorted.end());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    try {
      per_point[i] = run_point(points[i], sorted, opts);
    } catch (const std::exception& e) {
      per_point[i] = error_rows(points[i], sorted, e.what());
    }
    if (progress) {
      const auto& r = per_point[i].front();
      progress(point_label(points[i]) + (r.ok() ? " E0=" + format_number(r.energy) : " failed: " + r.error));
    }
  });
  std::vector<SweepRow> rows;
  for (auto& pr : per_point) {
    for (auto& r : pr) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> run_grid(const SweepSpec& spec, const ProgressFn& progress) {
  spec.validate();
  std::vector<ModelParams> points;
  for (double U : spec.u.values()) {
    for (double V : spec.v.values()) points.push_back({spec.L, U, V, spec.t, spec.bc});
  }
  return solve_points(points, spec.block_sizes, spec.solver, spec.threads, progress);
}

std::vector<DerivativePoint> central_derivative(const std::function<double(double)>& f,
                                                std::span<const double> xs, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  // Abscissae are keyed on a fine lattice so that x_i + h and x_{i+1} - h
  // coincide when the grid step is a multiple of h.
  auto key = [](double x) { return std::llround(x * 1e9); };
  std::map<long long, double> cache;
  for (double x : xs) {
    for (double s : {x - h, x + h}) {
      if (!cache.contains(key(s))) cache.emplace(key(s), f(s));
    }
  }
  std::vector<DerivativePoint> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x, (cache.at(key(x + h)) - cache.at(key(x - h))) / (2.0 * h)});
  return out;
}

std::vector<DerivativePoint> derivative_scan(const ModelParams& base, int l, const Range& v_range,
                                             double h, const SolverOptions& opts, int threads) {
  base.validate();
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const auto vs = v_range.values();

  // Evaluate the stencil abscissae in parallel, then difference them.
  std::vector<double> abscissae;
  for (double v : vs) {
    abscissae.push_back(v - h);
    abscissae.push_back(v + h);
  }
  std::sort(abscissae.begin(), abscissae.end());
  abscissae.erase(std::unique(abscissae.begin(), abscissae.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                  abscissae.end());
  std::vector<double> entropies(abscissae.size());
  const int ls[] = {l};
  parallel_for(abscissae.size(), threads, [&](std::size_t i) {
    ModelParams p = base;
    p.V = abscissae[i];
    entropies[i] = run_point(p, ls, opts).front().entropy;
  });
  return central_derivative(
      [&](double x) {
        const auto it = std::lower_bound(abscissae.begin(), abscissae.end(), x - 1e-9);
        if (it == abscissae.end() || std::abs(*it - x) > 1e-9) throw std::logic_error("missing stencil point");
        return entropies[static_cast<std::size_t>(it - abscissae.begin())];
      },
      vs, h);
}

ScalingFit scaling_fit(std::span<const BlockEntropy> points) {
  if (points.size() < 3) throw std::invalid_argument("scaling fit needs at least three block sizes");
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    if (p.l < 1) throw std::invalid_argument("block sizes must be positive");
    sx += std::log2(static_cast<double>(p.l));
    sy += p.entropy;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log2(static_cast<double>(p.l)) - mx;
    const double dy = p.entropy - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("scaling fit needs distinct block sizes");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A flat series is fitted exactly by a = 0.
  fit.r2 = syy <= 1e-300 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

std::vector<SweepRow> size_scan(const SizeScanSpec& spec, const ProgressFn& progress) {
  if (spec.sizes.empty()) throw std::invalid_argument("size scan needs at least one L");
  for (int L : spec.sizes) {
    ModelParams{L, 0.0, 0.0, spec.t, spec.bc}.validate();
    if (spec.l >= L) throw std::invalid_argument("block size must be smaller than every L");
  }
  if (spec.l < 1) throw std::invalid_argument("block size must be positive");
  std::vector<ModelParams> points;
  for (int L : spec.sizes) {
    for (double x : spec.range.values()) {
      ModelParams p{L, 0.0, 0.0, spec.t, spec.bc};
      (spec.axis == ScanAxis::U ? p.U : p.V) = x;
      (spec.axis == ScanAxis::U ? p.V : p.U) = spec.fixed;
      points.push_back(p);
    }
  }
  const int ls[] = {spec.l};
  return solve_points(points, ls, spec.solver, spec.threads, progress);
}

int snap_momentum(int L, Boundary bc, double k) {
  const MomentumGrid grid = allowed_momenta(L, bc);
  const auto [n, dist] = grid.nearest(k);
  if (dist > 1e-6) {
    throw std::invalid_argument("momentum " + format_number(k) + " is not on the allowed grid");
  }
  if (grid.negate(n) == n) throw std::invalid_argument("momentum block needs k != -k");
  return n;
}

std::vector<MomentumRow> momentum_scan(const ModelParams& base, int k_index, const Range& v_range,
                                       const SolverOptions& opts, int threads, const ProgressFn& progress) {
  base.validate();
  const MomentumGrid grid = allowed_momenta(base.L, base.resolved_bc());
  if (k_index < 0 || k_index >= base.L) throw std::invalid_argument("momentum index out of range");
  const int partner = grid.negate(k_index);
  if (partner == k_index) throw std::invalid_argument("momentum block needs k != -k");
  const SectorBasis basis = enumerate_sector(Sector::half_filled(base.L));
  const BlockSpec block = BlockSpec::momentum_pair(base.L, k_index, partner);

  const auto vs = v_range.values();
  std::vector<MomentumRow> rows(vs.size());
  parallel_for(vs.size(), threads, [&](std::size_t i) {
    ModelParams p = base;
    p.V = vs[i];
    MomentumRow& r = rows[i];
    r.L = p.L;
    r.k_index = k_index;
    r.k = grid.momenta[static_cast<std::size_t>(k_index)];
    r.U = p.U;
    r.V = p.V;
    r.bc = p.resolved_bc();
    try {
      const auto gs = ground_state(p, basis, Representation::momentum_space, opts);
      r.energy = gs.energy();
      r.gap = gs.gap;
      r.degenerate = gs.degenerate;
      r.entropy = von_neumann_entropy(reduced_density_matrix(gs, basis, block));
      r.total_momentum = total_momentum(dominant_config(gs.amplitudes, basis), grid);
    } catch (const std::exception& e) {
      r.energy = r.gap = r.entropy = r.total_momentum = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
    }
    if (progress) progress(point_label(p) + " k=" + format_number(r.k) + (r.ok() ? "" : " failed: " + r.error));
  });
  return rows;
}

std::vector<Jump> nearest_neighbor_jumps(std::span<const double> ys) {
  std::vector<Jump> out;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) out.push_back({i, std::abs(ys[i + 1] - ys[i])});
  std::stable_sort(out.begin(), out.end(), [](const Jump& a, const Jump& b) { return a.magnitude > b.magnitude; });
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "L,l,U,V,bc,energy,gap,entropy_bits,degenerate,dominant\n";
  for (const auto& r : rows) {
    os << r.L << ',' << r.l << ',' << format_number(r.U) << ',' << format_number(r.V) << ','
       << to_string(r.bc) << ',' << format_number(r.energy) << ',' << format_number(r.gap) << ','
       << format_number(r.entropy) << ',' << (r.degenerate ? 1 : 0) << ',' << r.dominant << '\n';
  }
}

void write_matrix(std::ostream& os, std::span<const SweepRow> rows) {
  std::vector<int> ls;
  std::vector<double> us, vs;
  for (const auto& r : rows) {
    ls.push_back(r.l);
    us.push_back(r.U);
    vs.push_back(r.V);
  }
  auto uniq = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(ls);
  uniq(us);
  uniq(vs);
  bool first_block = true;
  for (int l : ls) {
    if (!first_block) os << "\n\n";
    first_block = false;
    std::map<std::pair<double, double>, double> cell;
    for (const auto& r : rows) {
      if (r.l == l) cell[{r.U, r.V}] = r.entropy;
    }
    os << vs.size();
    for (double v : vs) os << ',' << format_number(v);
    os << '\n';
    for (double u : us) {
      os << format_number(u);
      for (double v : vs) {
        const auto it = cell.find({u, v});
        os << ',' << (it == cell.end() ? "nan" : format_number(it->second));
      }
      os << '\n';
    }
  }
}

void write_momentum_csv(std::ostream& os, std::span<const MomentumRow> rows) {
  os << "L,k,U,V,bc,energy,gap,entropy_bits,degenerate,total_momentum\n";
  for (const auto& r : rows) {
    os << r.L << ',' << format_number(r.k) << ',' << format_number(r.U) << ',' << format_number(r.V)
       << ',' << to_string(r.bc) << ',' << format_number(r.energy) << ',' << format_number(r.gap)
       << ',' << format_number(r.entropy) << ',' << (r.degenerate ? 1 : 0) << ','
       << format_number(r.total_momentum) << '\n';
  }
}

void write_derivative_csv(std::ostream& os, const ModelParams& base, int l,
                          std::span<const DerivativePoint> points) {
  os << "L,l,U,V,dE_dV\n";
  for (const auto& p : points) {
    os << base.L << ',' << l << ',' << format_number(base.U) << ',' << format_number(p.x) << ','
       << format_number(p.derivative) << '\n';
  }
}

void write_plot_script(std::ostream& os, const std::string& matrix_path, std::span<const int> block_sizes) {
  os << "# gnuplot script: contour map of block entropy over the U-V plane\n"
     << "set datafile separator ','\n"
     << "set xlabel 'V'\nset ylabel 'U'\nset cblabel 'E_v (bits)'\n"
     << "set view map\nset contour base\nset cntrparam levels 20\n";
  std::vector<int> ls(block_sizes.begin(), block_sizes.end());
  std::sort(ls.begin(), ls.end());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    os << "set title 'l = " << ls[i] << "'\n"
       << "splot '" << matrix_path << "' index " << i << " nonuniform matrix with pm3d notitle\n";
    if (i + 1 < ls.size()) os << "pause -1\n";
  }
}

}  // namespace hubent
