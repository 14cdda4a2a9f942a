#include "hubent/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hubent/analytic_oracles.hpp"
#include "hubent/model_momentum.hpp"
#include "hubent/rdm_entropy.hpp"
#include "hubent/validate.hpp"

namespace hubent::cli {

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {  // a:b inclusive
        const int a = std::stoi(item.substr(0, colon));
        const int b = std::stoi(item.substr(colon + 1));
        for (int i = a; i <= b; ++i) out.push_back(i);
      }
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

constexpr const char* kDescription =
    "Exact diagonalization of the half-filled 1D extended Hubbard model and\n"
    "block entanglement entropy in real and momentum space.\n\n"
    "Subcommands:\n"
    "  ground      ground-state energy and gap\n"
    "  entropy     block entropies E(l) at one (U, V) point\n"
    "  local       single-site weights and local entanglement\n"
    "  sweep       U-V grid of block entropies (csv or matrix)\n"
    "  scaling     E(l) for l = 1..L/2 and the fit E = a log2(l) + b\n"
    "  sizescan    fixed-l entropy curves for several L along U or V\n"
    "  derivative  central-difference dE/dV along a V grid\n"
    "  momentum    entropy of the {+k, -k} momentum block along a V grid\n"
    "  validate    oracle suite; exit 0 iff every check passes\n";

std::unique_ptr<std::ostream> open_output(const RunConfig& c, std::ostream& fallback, std::ostream*& target) {
  if (c.out.empty()) {
    target = &fallback;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(c.out);
  if (!*f) throw std::runtime_error("cannot open output file '" + c.out + "'");
  target = f.get();
  return f;
}

std::vector<int> default_scaling_sizes(int L) {
  std::vector<int> ls;
  for (int l = 1; l <= L / 2; ++l) ls.push_back(l);
  return ls;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"ground",     "entropy",  "local",    "sweep",   "scaling",
                                              "sizescan",   "derivative", "momentum", "validate"};
  return names;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{kDescription, "hubent"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  std::string bc = "auto", l_list, sizes, axis = "U", grid_u, grid_v;
  app.add_option("command", c.subcommand, "subcommand")->required()->check(CLI::IsMember(subcommands()));
  auto* opt_L = app.add_option("--L", c.model.L, "number of sites (even, 4..14)");
  app.add_option("--U", c.model.U, "on-site interaction");
  app.add_option("--V", c.model.V, "nearest-neighbour interaction");
  app.add_option("--t", c.model.t, "hopping amplitude")->capture_default_str();
  app.add_option("--bc", bc, "boundary condition")->check(CLI::IsMember({"auto", "periodic", "antiperiodic"}))
      ->capture_default_str();
  app.add_option("--l", l_list, "block size(s): comma list, a:b ranges allowed");
  app.add_option("--grid-u", grid_u, "U axis min:max:step");
  app.add_option("--grid-v", grid_v, "V axis min:max:step");
  auto* opt_k = app.add_option("--k", c.k, "momentum of the block in radians (snapped to the grid)");
  app.add_option("--h", c.h, "finite-difference step for dE/dV")->capture_default_str();
  app.add_option("--sizes", sizes, "system sizes for sizescan, comma list");
  app.add_option("--axis", axis, "sizescan axis")->check(CLI::IsMember({"U", "V"}))->capture_default_str();
  app.add_option("--tol", c.solver.tol, "eigenvalue convergence tolerance")->capture_default_str();
  app.add_option("--max-iter", c.solver.max_iter, "maximum Lanczos matrix-vector products per eigenpair")->capture_default_str();
  app.add_option("--seed", c.solver.seed, "Lanczos start-vector seed")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads for scans")->capture_default_str();
  app.add_option("--out", c.out, "output file (default: standard output)");
  app.add_option("--format", c.format, "sweep output format")->check(CLI::IsMember({"csv", "matrix"}))
      ->capture_default_str();
  app.add_option("--plot", c.plot, "also write a gnuplot script for the sweep matrix");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    c.help = true;
    c.help_text = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    c.model.bc = parse_boundary(bc);
    if (!l_list.empty()) c.block_sizes = parse_int_list(l_list);
    if (!sizes.empty()) c.sizes = parse_int_list(sizes);
    c.axis = axis == "U" ? ScanAxis::U : ScanAxis::V;
    if (!grid_u.empty()) {
      c.grid_u = Range::parse(grid_u);
      c.has_grid_u = true;
    }
    if (!grid_v.empty()) {
      c.grid_v = Range::parse(grid_v);
      c.has_grid_v = true;
    }
    c.has_k = opt_k->count() > 0;

    if (c.subcommand != "validate") {
      if (c.subcommand == "sizescan") {
        for (int L : c.sizes) ModelParams{L, 0.0, 0.0, c.model.t, c.model.bc}.validate();
      } else {
        if (opt_L->count() == 0) throw UsageError("--L is required for '" + c.subcommand + "'");
        c.model.validate();
      }
    }
    if (c.threads < 1) throw UsageError("--threads must be positive");
    if (!(c.solver.tol > 0.0)) throw UsageError("--tol must be positive");
    if (c.solver.max_iter < 2) throw UsageError("--max-iter must be at least 2");
    if (!(c.h > 0.0)) throw UsageError("--h must be positive");

    const auto& s = c.subcommand;
    if (s == "sweep" && (!c.has_grid_u || !c.has_grid_v)) throw UsageError("sweep needs --grid-u and --grid-v");
    if (s == "derivative" || s == "momentum") {
      if (!c.has_grid_v) throw UsageError(s + " needs --grid-v");
    }
    if (s == "momentum" && !c.has_k) throw UsageError("momentum needs --k");
    if (s == "derivative" && c.block_sizes.size() != 1) throw UsageError("derivative needs exactly one --l");
    if (s == "sizescan") {
      if (c.block_sizes.size() != 1) throw UsageError("sizescan needs exactly one --l");
      if ((c.axis == ScanAxis::U && !c.has_grid_u) || (c.axis == ScanAxis::V && !c.has_grid_v)) {
        throw UsageError("sizescan needs the grid of its --axis");
      }
    }
    const int L = c.model.L;
    if (s != "sizescan" && s != "validate") {
      for (int l : c.block_sizes) {
        if (l < 1 || l > L - 1) throw UsageError("block sizes must lie in [1, L-1]");
      }
    }
    if (s == "momentum") (void)snap_momentum(L, c.model.resolved_bc(), c.k);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.help) {
    out << c.help_text;
    return kExitOk;
  }
  ProgressFn log = [&err](std::string_view line) {
    static std::mutex m;
    const std::lock_guard lock(m);
    err << line << '\n';
  };

  std::ostream* os = nullptr;
  const auto file = open_output(c, out, os);
  const auto& s = c.subcommand;
  const ModelParams& p = c.model;

  if (s == "ground") {
    const auto gs = ground_state(p, Sector::half_filled(p.L), Representation::real_space, c.solver);
    *os << "L,U,V,bc,energy,gap,degenerate,residual,method,iterations\n"
        << p.L << ',' << format_number(p.U) << ',' << format_number(p.V) << ',' << to_string(p.resolved_bc())
        << ',' << format_number(gs.energy()) << ',' << format_number(gs.gap) << ',' << (gs.degenerate ? 1 : 0)
        << ',' << format_number(gs.residual) << ',' << to_string(gs.method) << ',' << gs.iterations << '\n';
    return kExitOk;
  }
  if (s == "entropy") {
    const auto ls = c.block_sizes.empty() ? default_scaling_sizes(p.L) : c.block_sizes;
    write_csv(*os, run_point(p, ls, c.solver));
    return kExitOk;
  }
  if (s == "local") {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(p.L));
    const auto gs = ground_state(p, basis, Representation::real_space, c.solver);
    const auto w = local_weights(gs.amplitudes, basis, 0);
    *os << "L,U,V,z,u_plus,u_minus,w,entropy_bits\n"
        << p.L << ',' << format_number(p.U) << ',' << format_number(p.V) << ',' << format_number(w.z) << ','
        << format_number(w.u_plus) << ',' << format_number(w.u_minus) << ',' << format_number(w.w) << ','
        << format_number(local_entanglement(w)) << '\n';
    return kExitOk;
  }
  if (s == "sweep") {
    SweepSpec spec;
    spec.L = p.L;
    spec.t = p.t;
    spec.bc = p.bc;
    spec.u = c.grid_u;
    spec.v = c.grid_v;
    spec.block_sizes = c.block_sizes.empty() ? std::vector<int>{3} : c.block_sizes;
    spec.solver = c.solver;
    spec.threads = c.threads;
    const auto rows = run_grid(spec, log);
    if (c.format == "matrix") {
      write_matrix(*os, rows);
    } else {
      write_csv(*os, rows);
    }
    if (!c.plot.empty()) {
      std::ofstream plot(c.plot);
      if (!plot) throw std::runtime_error("cannot open plot file '" + c.plot + "'");
      write_plot_script(plot, c.out.empty() ? "sweep_matrix.csv" : c.out, spec.block_sizes);
    }
    const bool any_error = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); });
    return any_error ? kExitFailure : kExitOk;
  }
  if (s == "scaling") {
    const auto ls = c.block_sizes.empty() ? default_scaling_sizes(p.L) : c.block_sizes;
    const auto rows = run_point(p, ls, c.solver);
    std::vector<BlockEntropy> pts;
    *os << "L,U,V,l,entropy_bits\n";
    for (const auto& r : rows) {
      pts.push_back({r.l, r.entropy});
      *os << r.L << ',' << format_number(r.U) << ',' << format_number(r.V) << ',' << r.l << ','
          << format_number(r.entropy) << '\n';
    }
    const auto fit = scaling_fit(pts);
    *os << "\nslope,intercept,r2\n"
        << format_number(fit.slope) << ',' << format_number(fit.intercept) << ',' << format_number(fit.r2) << '\n';
    return kExitOk;
  }
  if (s == "sizescan") {
    SizeScanSpec spec;
    spec.l = c.block_sizes.front();
    spec.sizes = c.sizes;
    spec.axis = c.axis;
    spec.fixed = c.axis == ScanAxis::U ? p.V : p.U;
    spec.range = c.axis == ScanAxis::U ? c.grid_u : c.grid_v;
    spec.t = p.t;
    spec.bc = p.bc;
    spec.solver = c.solver;
    spec.threads = c.threads;
    const auto rows = size_scan(spec, log);
    write_csv(*os, rows);
    const bool any_error = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); });
    return any_error ? kExitFailure : kExitOk;
  }
  if (s == "derivative") {
    const int l = c.block_sizes.front();
    write_derivative_csv(*os, p, l, derivative_scan(p, l, c.grid_v, c.h, c.solver, c.threads));
    return kExitOk;
  }
  if (s == "momentum") {
    const int n = snap_momentum(p.L, p.resolved_bc(), c.k);
    const auto rows = momentum_scan(p, n, c.grid_v, c.solver, c.threads, log);
    write_momentum_csv(*os, rows);
    const bool any_error = std::any_of(rows.begin(), rows.end(), [](const MomentumRow& r) { return !r.ok(); });
    return any_error ? kExitFailure : kExitOk;
  }
  if (s == "validate") {
    const auto start = std::chrono::steady_clock::now();
    const auto results = run_validation(c.solver);
    bool all = true;
    for (const auto& r : results) {
      *os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
      all = all && r.passed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *os << (all ? "all checks passed" : "some checks FAILED") << " in " << format_number(secs) << " s\n";
    return all ? kExitOk : kExitFailure;
  }
  throw UsageError("unknown subcommand '" + s + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  try {
    return run(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hubent::cli
