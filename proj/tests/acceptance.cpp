// Acceptance run: one PASS/FAIL line per criterion, observed values alongside.
// Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hubent/analytic_oracles.hpp"
#include "hubent/eigensolver.hpp"
#include "hubent/model_momentum.hpp"
#include "hubent/rdm_entropy.hpp"
#include "hubent/sweep.hpp"
#include "hubent/validate.hpp"
#include "oracles.hpp"

using namespace hubent;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) { return format_number(x); }

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  const auto t0 = Clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  if (!ok) ++failures;
  std::printf("%s C%d %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.str().c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

// Twist of the wrap bond under the automatic rule: closed shell for L = 4n+2.
double auto_twist(int L) { return L % 4 == 0 ? -1.0 : 1.0; }

std::vector<unsigned> raw_configs(const SectorBasis& basis) {
  std::vector<unsigned> out;
  out.reserve(basis.size());
  for (const auto& c : basis.configs()) out.push_back(static_cast<unsigned>(c.bits));
  return out;
}

Eigen::VectorXd oracle_spectrum(const SectorBasis& basis, std::span<const Complex> amps, unsigned mask) {
  const std::vector<Complex> a(amps.begin(), amps.end());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(oracle::density_matrix(raw_configs(basis), a, mask))
      .eigenvalues();
}

unsigned site_mask(int first, int l) {
  unsigned m = 0;
  for (int j = first; j < first + l; ++j) m |= 3u << (2 * j);
  return m;
}

bool within(double x, double lo, double hi) { return x >= lo - 1e-9 && x <= hi + 1e-9; }

// Interior points strictly below (above) both neighbours.
std::vector<std::size_t> local_extrema(const std::vector<double>& y, bool minima) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const bool is_min = y[i] < y[i - 1] && y[i] < y[i + 1];
    const bool is_max = y[i] > y[i - 1] && y[i] > y[i + 1];
    if (minima ? is_min : is_max) out.push_back(i);
  }
  return out;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> xs;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) xs.push_back(lo + i * step);
  return xs;
}

double row_entropy(const ModelParams& p, int l, const SolverOptions& opts) {
  const int ls[] = {l};
  return run_point(p, ls, opts).front().entropy;
}

std::string dominant_label(const ModelParams& p, int l, const SolverOptions& opts) {
  const int ls[] = {l};
  return run_point(p, ls, opts).front().dominant;
}

}  // namespace

int main() {
  const SolverOptions opts;

  criterion(1, "free-fermion ground energies", [&](std::ostringstream& os) {
    bool ok = true;
    for (int L : {4, 8, 10, 12}) {
      const auto t0 = Clock::now();
      const auto gs = ground_state({L, 0.0, 0.0, 1.0, Boundary::automatic}, Sector::half_filled(L),
                                   Representation::real_space, opts);
      const double dt = seconds_since(t0);
      const double err = std::abs(gs.energy() - oracle::free_fermion_energy(L, auto_twist(L), L / 2, L / 2));
      ok = ok && err <= 1e-9 && dt < 30.0;
      os << "L=" << L << " err=" << num(err) << " t=" << num(dt) << "s ";
    }
    return ok;
  });

  criterion(2, "real vs momentum lowest five eigenvalues", [&](std::ostringstream& os) {
    SolverOptions five = opts;
    five.n_low = 5;
    double worst = 0.0, worst_fock = 0.0;
    for (int L : {4, 8}) {
      const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
      for (auto [U, V] : {std::pair{-2.0, -0.5}, std::pair{0.0, 1.0}, std::pair{4.0, -1.0}}) {
        const ModelParams p{L, U, V, 1.0, Boundary::automatic};
        const auto real = ground_state(p, basis, Representation::real_space, five);
        const auto mom = ground_state(p, basis, Representation::momentum_space, five);
        for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(real.energies[i] - mom.energies[i]));
        if (L == 4) {
          const Eigen::MatrixXd h = oracle::restrict_to(oracle::fock_space_hamiltonian(L, U, V, 1.0, auto_twist(L)),
                                                        raw_configs(basis));
          const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
          for (int i = 0; i < 5; ++i) worst_fock = std::max(worst_fock, std::abs(mom.energies[i] - ev(i)));
        }
      }
    }
    os << "max |real - momentum| " << num(worst) << ", L=4 vs Fock-space oracle " << num(worst_fock);
    return worst <= 1e-8 && worst_fock <= 1e-8;
  });

  // Shared by C3 and C12.
  std::vector<double> cdw_entropy;  // l = 2..7
  double cdw_oracle_l4 = 0.0;
  {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(8));
    const auto gs = ground_state({8, 0.0, 10.0, 1.0, Boundary::automatic}, basis, Representation::real_space, opts);
    for (int l = 2; l <= 7; ++l) {
      cdw_entropy.push_back(von_neumann_entropy(reduced_density_matrix(gs, basis, BlockSpec::contiguous_sites(8, l))));
    }
    cdw_oracle_l4 = oracle::entropy_bits(oracle_spectrum(basis, gs.amplitudes, site_mask(0, 4)));
  }

  criterion(3, "CDW saturation at L=8, U=0, V=10", [&](std::ostringstream& os) {
    bool ok = true;
    for (int l = 2; l <= 4; ++l) {
      const double e = cdw_entropy[l - 2];
      ok = ok && std::abs(e - 1.0) <= 0.05;
      os << "E(" << l << ")=" << num(e) << ' ';
    }
    os << "(partial-trace oracle E(4)=" << num(cdw_oracle_l4) << ", tolerance 0.05)";
    return ok && std::abs(cdw_oracle_l4 - cdw_entropy[2]) <= 1e-9;
  });

  criterion(4, "PS(a) rank law at L=10", [&](std::ostringstream& os) {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(10));
    const auto ref = reference_state(ReferenceLabel::ps_a, basis);
    bool ok = true;
    for (int l = 1; l <= 4; ++l) {
      const int expected = (l * l + l + 2) / 2;
      const int rank = rdm_rank(reduced_density_matrix(ref.amplitudes, basis, BlockSpec::contiguous_sites(10, l)));
      const Eigen::VectorXd ev = oracle_spectrum(basis, ref.amplitudes, site_mask(0, l));
      const int oracle_rank = static_cast<int>((ev.array() > 1e-10).count());
      ok = ok && rank == expected;
      os << "l=" << l << " rank=" << rank << " oracle=" << oracle_rank << " expected=" << expected << ' ';
    }
    return ok;
  });

  criterion(5, "PS(d) local entanglement closed form", [&](std::ostringstream& os) {
    double worst = 0.0, worst_oracle = 0.0;
    for (int L : {6, 8, 10, 12}) {
      const double a = 1.0 / L, b = (L - 2.0) / (2.0 * L);
      const double expected = -2.0 * a * std::log2(a) - 2.0 * b * std::log2(b);
      const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
      const auto ref = reference_state(ReferenceLabel::ps_d, basis);
      for (int site = 0; site < L; ++site) {
        worst = std::max(worst, std::abs(local_entanglement(local_weights(ref.amplitudes, basis, site)) - expected));
      }
      if (L <= 8) {
        const double e = oracle::entropy_bits(oracle_spectrum(basis, ref.amplitudes, site_mask(0, 1)));
        worst_oracle = std::max(worst_oracle, std::abs(e - expected));
      }
    }
    os << "max deviation " << num(worst) << ", one-site partial-trace oracle (L=6,8) " << num(worst_oracle);
    return worst <= 1e-10 && worst_oracle <= 1e-10;
  });

  criterion(6, "entropy minimum near V=0 and maximum near V=0.09 (L=10, U=0)", [&](std::ostringstream& os) {
    const auto vs = grid(-0.1, 0.2, 0.01);
    const int ls[] = {3, 4, 5};
    std::vector<std::vector<double>> curves(3);
    for (double V : vs) {
      const auto rows = run_point({10, 0.0, V, 1.0, Boundary::automatic}, ls, opts);
      for (int i = 0; i < 3; ++i) curves[i].push_back(rows[i].entropy);
    }
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      bool has_min = false, has_max = false;
      os << "l=" << ls[i] << " minima {";
      for (auto k : local_extrema(curves[i], true)) {
        os << ' ' << num(vs[k]);
        has_min = has_min || within(vs[k], -0.01, 0.01);
      }
      os << " } maxima {";
      for (auto k : local_extrema(curves[i], false)) {
        os << ' ' << num(vs[k]);
        has_max = has_max || within(vs[k], 0.07, 0.11);
      }
      os << " } ";
      ok = ok && has_min && has_max;
    }
    return ok;
  });

  criterion(7, "dE/dV extremum (L=8, l=4, U=-2)", [&](std::ostringstream& os) {
    const auto d = derivative_scan({8, -2.0, 0.0, 1.0, Boundary::automatic}, 4, Range{-1.0, 1.0, 0.05}, 0.05, opts);
    std::vector<double> mag;
    for (const auto& p : d) mag.push_back(std::abs(p.derivative));
    const auto minima = local_extrema(mag, true);
    os << "interior minima of |dE/dV| on [-1,1]:";
    for (auto k : minima) os << " V=" << num(d[k].x) << " (" << num(d[k].derivative) << ")";
    return minima.size() == 1 && within(d[minima[0]].x, -0.3, -0.1);
  });

  criterion(8, "momentum-block entropy minimum (L=8, k=pi/8, U=-2)", [&](std::ostringstream& os) {
    const int k = snap_momentum(8, Boundary::antiperiodic, M_PI / 8);
    const auto rows = momentum_scan({8, -2.0, 0.0, 1.0, Boundary::automatic}, k, Range{-1.0, 1.0, 0.05}, opts);
    const auto best = std::min_element(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) { return a.entropy < b.entropy; });
    const auto free = momentum_scan({8, 0.0, 0.0, 1.0, Boundary::automatic}, k, Range::single(0.0), opts);
    os << "argmin V=" << num(best->V) << " (E=" << num(best->entropy) << "), E(U=V=0)=" << num(free[0].entropy);
    return within(best->V, -0.25, -0.15) && std::abs(free[0].entropy) <= 1e-10;
  });

  criterion(9, "entropy jumps along U at V=-4 (L=10, l=4)", [&](std::ostringstream& os) {
    const double V = -4.0, t = 1.0;
    // Equal second-order energies: 5U + 16V + 4t^2/V = 4U + 16V + 1.5t^2/V.
    const double u_star = (1.5 - 4.0) * t * t / V;
    const auto us = grid(0.0, 8.0, 0.25);
    std::vector<double> e;
    for (double U : us) e.push_back(row_entropy({10, U, V, t, Boundary::automatic}, 4, opts));
    std::vector<std::size_t> idx(us.size() - 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](auto a, auto b) { return std::abs(e[a + 1] - e[a]) > std::abs(e[b + 1] - e[b]); });
    auto lo = idx[0], hi = idx[1];
    if (us[lo] > us[hi]) std::swap(lo, hi);
    os << "U*=" << num(u_star) << " (library " << num(ps_crossover_U(V, t)) << "), jumps [" << num(us[lo]) << ","
       << num(us[lo + 1]) << "] " << num(std::abs(e[lo + 1] - e[lo])) << " and [" << num(us[hi]) << ","
       << num(us[hi + 1]) << "] " << num(std::abs(e[hi + 1] - e[hi]));
    return within(us[lo], 0.25, 1.0) && within(us[lo + 1], 0.25, 1.0) && within(us[hi], 4.0, 6.0) &&
           within(us[hi + 1], 4.0, 6.0) && us[lo] <= u_star && u_star <= us[lo + 1] &&
           std::abs(u_star - ps_crossover_U(V, t)) <= 1e-12;
  });

  criterion(10, "dominant-configuration switches along V (L=10, U=2, l=4)", [&](std::ostringstream& os) {
    const auto label = [&](double V) { return dominant_label({10, 2.0, V, 1.0, Boundary::automatic}, 4, opts); };
    const auto vs = grid(-3.5, -1.5, 0.1);
    std::vector<std::string> labels;
    for (double V : vs) labels.push_back(label(V));
    // Locate a switch by bisection down to 0.005 and report the midpoint.
    const auto locate = [&](const std::function<bool(const std::string&)>& before) -> double {
      for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        if (before(labels[i]) && !before(labels[i + 1])) {
          double a = vs[i], b = vs[i + 1];
          while (b - a > 0.005) {
            const double m = 0.5 * (a + b);
            (before(label(m)) ? a : b) = m;
          }
          return 0.5 * (a + b);
        }
      }
      return std::nan("");
    };
    const double d_to_a = locate([](const std::string& s) { return s == "PS(d)"; });
    const double a_to_non = locate([](const std::string& s) { return s == "PS(a)" || s == "PS(d)"; });
    os << "PS(d)->PS(a) at V=" << num(d_to_a) << " (window [-3.0,-2.6]), PS(a)->non-PS at V=" << num(a_to_non)
       << " (window [-2.4,-2.0])";
    return within(d_to_a, -3.0, -2.6) && within(a_to_non, -2.4, -2.0);
  });

  criterion(11, "property suite and Lanczos vs dense", [&](std::ostringstream& os) {
    const auto t0 = Clock::now();
    const auto checks = run_validation(opts);
    const double dt = seconds_since(t0);
    bool ok = dt < 600.0;
    for (const auto& c : checks) {
      if (c.name.find("invariants") != std::string::npos || c.name.find("Lanczos") != std::string::npos) {
        ok = ok && c.passed;
        os << (c.passed ? "ok " : "BAD ") << c.name << ": " << c.detail << "; ";
      }
    }
    os << "validate " << num(dt) << "s; ";
    double de = 0.0, ov = 1.0;
    int sectors = 0, nondegenerate = 0;
    for (int L : {4, 6, 8, 10}) {
      for (int nu = 0; nu <= L; ++nu) {
        for (int nd = 0; nd <= L; ++nd) {
          const std::uint64_t dim = binomial(L, nu) * binomial(L, nd);
          if (dim < 2 || dim > kDenseLimit) continue;
          const SectorBasis basis = enumerate_sector({L, nu, nd});
          const auto H = build_real_hamiltonian({L, -1.0, 0.5, 1.0, Boundary::automatic}, basis);
          const auto dense = dense_ground(H, 2);
          SolverOptions lo = opts;
          lo.n_low = 1;
          const auto lz = lanczos_ground(H, lo);
          de = std::max(de, std::abs(dense.energy() - lz.energy()));
          if (!dense.degenerate) {
            ov = std::min(ov, overlap_magnitude(dense.amplitudes, lz.amplitudes));
            ++nondegenerate;
          }
          ++sectors;
        }
      }
    }
    os << sectors << " sectors (L=4..10, dim<=" << kDenseLimit << "), max |dE| " << num(de) << ", min overlap "
       << num(ov) << " over " << nondegenerate << " non-degenerate";
    return ok && de <= 1e-9 && ov >= 1.0 - 1e-8;
  });

  criterion(12, "log2(l) scaling in PS and CDW flatness", [&](std::ostringstream& os) {
    const int ls[] = {1, 2, 3, 4, 5, 6};
    const auto rows = run_point({12, -2.0, -3.0, 1.0, Boundary::automatic}, ls, opts);
    std::vector<BlockEntropy> pts;
    for (const auto& r : rows) pts.push_back({r.l, r.entropy});
    // Independent least squares on (log2 l, E).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& p : pts) {
      const double x = std::log2(p.l);
      sx += x, sy += p.entropy, sxx += x * x, sxy += x * p.entropy;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (const auto& p : pts) {
      ss_res += std::pow(p.entropy - (slope * std::log2(p.l) + icept), 2);
      ss_tot += std::pow(p.entropy - sy / n, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    const auto lib = scaling_fit(pts);
    double cdw_dev = 0.0;
    for (double e : cdw_entropy) cdw_dev = std::max(cdw_dev, std::abs(e - 1.0));
    os << "PS fit slope " << num(slope) << " R2 " << num(r2) << " (library R2 " << num(lib.r2)
       << "); CDW max_l>=2 |E-1| " << num(cdw_dev);
    return r2 >= 0.95 && std::abs(lib.r2 - r2) <= 1e-9 && cdw_dev <= 0.05;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
