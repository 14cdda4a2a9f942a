#include "hubent/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "hubent/analytic_oracles.hpp"
#include "hubent/model_momentum.hpp"
#include "hubent/rdm_entropy.hpp"

namespace hubent {

namespace {

class Suite {
 public:
  explicit Suite(const ProgressFn& progress) : progress_(progress) {}

  void run(const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckResult r;
    r.name = name;
    try {
      bool ok = true;
      r.detail = body(ok);
      r.passed = ok;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (progress_) progress_((r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail);
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const ProgressFn& progress_;
  std::vector<CheckResult> results_;
};

std::string fmt(double x) { return format_number(x); }

}  // namespace

std::vector<CheckResult> run_validation(const SolverOptions& opts, const ProgressFn& progress) {
  Suite suite(progress);

  suite.run("free-fermion ground energies (L=4,8,10,12)", [&](bool& ok) {
    std::ostringstream os;
    for (int L : {4, 8, 10, 12}) {
      const ModelParams p{L, 0.0, 0.0, 1.0, Boundary::automatic};
      const auto gs = ground_state(p, Sector::half_filled(L), Representation::real_space, opts);
      const double ref = free_fermion_ground_energy(L, p.resolved_bc(), L / 2, L / 2);
      const double err = std::abs(gs.energy() - ref);
      ok = ok && err <= 1e-9;
      os << "L=" << L << " err=" << fmt(err) << ' ';
    }
    return os.str();
  });

  suite.run("real vs momentum spectra (lowest 5, L=4,8)", [&](bool& ok) {
    double worst = 0.0;
    SolverOptions five = opts;
    five.n_low = 5;
    for (int L : {4, 8}) {
      const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
      for (auto [U, V] : {std::pair{-2.0, -0.5}, std::pair{0.0, 1.0}, std::pair{4.0, -1.0}}) {
        const ModelParams p{L, U, V, 1.0, Boundary::automatic};
        const auto real = ground_state(p, basis, Representation::real_space, five);
        const auto mom = ground_state(p, basis, Representation::momentum_space, five);
        for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(real.energies[i] - mom.energies[i]));
      }
    }
    ok = worst <= 1e-8;
    return "max deviation " + fmt(worst);
  });

  suite.run("PS(a) rank law (L=10, l=1..4)", [&](bool& ok) {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(10));
    const auto ref = reference_state(ReferenceLabel::ps_a, basis);
    std::ostringstream os;
    for (int l = 1; l <= 4; ++l) {
      const int rank = rdm_rank(reduced_density_matrix(ref.amplitudes, basis, BlockSpec::contiguous_sites(10, l)));
      ok = ok && rank == ps_rank(l);
      os << "l=" << l << " rank=" << rank << "/" << ps_rank(l) << ' ';
    }
    return os.str();
  });

  suite.run("CDW saturation (reference state L=8, ground state L=8 U=0 V=10)", [&](bool& ok) {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(8));
    const auto ref = reference_state(ReferenceLabel::cdw, basis);
    double worst_ref = 0.0;
    for (int l = 1; l <= 7; ++l) {
      const double e = von_neumann_entropy(reduced_density_matrix(ref.amplitudes, basis, BlockSpec::contiguous_sites(8, l)));
      worst_ref = std::max(worst_ref, std::abs(e - 1.0));
    }
    const int ls[] = {2, 3, 4};
    double worst_gs = 0.0;
    for (const auto& row : run_point({8, 0.0, 10.0, 1.0, Boundary::automatic}, ls, opts)) {
      worst_gs = std::max(worst_gs, std::abs(row.entropy - 1.0));
    }
    ok = worst_ref <= 1e-10 && worst_gs <= 0.05;
    return "reference dev " + fmt(worst_ref) + ", ground-state dev " + fmt(worst_gs);
  });

  suite.run("PS(d) local entropy formula (L=6,8,10,12)", [&](bool& ok) {
    double worst = 0.0;
    for (int L : {6, 8, 10, 12}) {
      const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
      const auto ref = reference_state(ReferenceLabel::ps_d, basis);
      for (int site = 0; site < L; ++site) {
        const double e = local_entanglement(local_weights(ref.amplitudes, basis, site));
        worst = std::max(worst, std::abs(e - psd_local_entropy(L)));
      }
    }
    ok = worst <= 1e-10;
    return "max deviation " + fmt(worst);
  });

  suite.run("RDM invariants (complement, translation, l=1 fast path, trace/PSD/Hermitian)", [&](bool& ok) {
    double comp = 0.0, trans = 0.0, fast = 0.0, trace = 0.0, psd = 0.0, herm = 0.0;
    for (int L : {8, 10}) {
      const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
      for (auto [U, V] : {std::pair{-2.0, -1.0}, std::pair{2.0, 0.5}}) {
        const auto gs = ground_state({L, U, V, 1.0, Boundary::automatic}, basis, Representation::real_space, opts);
        for (int l = 1; l < L; ++l) {
          const auto block = BlockSpec::contiguous_sites(L, l);
          const auto rdm = reduced_density_matrix(gs, basis, block);
          const double e = von_neumann_entropy(rdm);
          comp = std::max(comp, std::abs(e - von_neumann_entropy(reduced_density_matrix(gs, basis, block.complement()))));
          trans = std::max(trans, std::abs(e - von_neumann_entropy(
                                                   reduced_density_matrix(gs, basis, BlockSpec::contiguous_sites(L, l, 1)))));
          trace = std::max(trace, std::abs(rdm.trace - 1.0));
          herm = std::max(herm, rdm.hermiticity_defect());
          psd = std::min(psd, rdm.spectrum().front());
          if (l == 1) fast = std::max(fast, std::abs(e - local_entanglement(local_weights(gs.amplitudes, basis, 0))));
        }
      }
    }
    ok = comp <= 1e-8 && trans <= 1e-8 && fast <= 1e-10 && trace <= 1e-9 && psd >= -1e-10 && herm <= 1e-12;
    return "complement " + fmt(comp) + ", translation " + fmt(trans) + ", fast path " + fmt(fast) +
           ", trace " + fmt(trace) + ", min eigenvalue " + fmt(psd) + ", hermiticity " + fmt(herm);
  });

  suite.run("Lanczos vs dense (all sectors L=4,6)", [&](bool& ok) {
    double de = 0.0, ov = 1.0;
    int sectors = 0;
    for (int L : {4, 6}) {
      for (int nu = 0; nu <= L; ++nu) {
        for (int nd = 0; nd <= L; ++nd) {
          const SectorBasis basis = enumerate_sector({L, nu, nd});
          if (basis.size() < 2) continue;
          const auto H = build_real_hamiltonian({L, -1.0, 0.5, 1.0, Boundary::automatic}, basis);
          const auto dense = dense_ground(H, 2);
          if (dense.degenerate) continue;
          SolverOptions lo = opts;
          lo.n_low = 1;
          const auto lz = lanczos_ground(H, lo);
          de = std::max(de, std::abs(dense.energy() - lz.energy()));
          ov = std::min(ov, overlap_magnitude(dense.amplitudes, lz.amplitudes));
          ++sectors;
        }
      }
    }
    ok = de <= 1e-9 && ov >= 1.0 - 1e-8;
    return std::to_string(sectors) + " non-degenerate sectors, max |dE| " + fmt(de) + ", min overlap " + fmt(ov);
  });

  return suite.take();
}

}  // namespace hubent
