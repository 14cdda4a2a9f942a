#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hubent/analytic_oracles.hpp"
#include "hubent/eigensolver.hpp"
#include "hubent/model_momentum.hpp"
#include "hubent/rdm_entropy.hpp"
#include "hubent/sweep.hpp"
#include "hubent/validate.hpp"

namespace py = pybind11;
using namespace hubent;

namespace {

ModelParams params(int L, double U, double V, double t, const std::string& bc) {
  ModelParams p{L, U, V, t, parse_boundary(bc)};
  p.validate();
  return p;
}

SolverOptions solver(int n_low, double tol, int max_iter, std::uint64_t seed) {
  SolverOptions o;
  o.n_low = n_low;
  o.tol = tol;
  o.max_iter = max_iter;
  o.seed = seed;
  return o;
}

Representation representation(const std::string& s) {
  if (s == "real") return Representation::real_space;
  if (s == "momentum") return Representation::momentum_space;
  throw std::invalid_argument("representation must be 'real' or 'momentum'");
}

py::dict row_dict(const SweepRow& r) {
  py::dict d;
  d["L"] = r.L;
  d["l"] = r.l;
  d["U"] = r.U;
  d["V"] = r.V;
  d["bc"] = std::string(to_string(r.bc));
  d["energy"] = r.energy;
  d["gap"] = r.gap;
  d["entropy"] = r.entropy;
  d["degenerate"] = r.degenerate;
  d["dominant"] = r.dominant;
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact diagonalization and block entanglement of the half-filled extended Hubbard chain";

  m.def(
      "ground_state",
      [](int L, double U, double V, double t, const std::string& bc, const std::string& rep, int n_low,
         double tol, int max_iter, std::uint64_t seed) {
        const ModelParams p = params(L, U, V, t, bc);
        const auto gs = ground_state(p, Sector::half_filled(L), representation(rep), solver(n_low, tol, max_iter, seed));
        py::dict d;
        d["energies"] = gs.energies;
        d["gap"] = gs.gap;
        d["degenerate"] = gs.degenerate;
        d["residual"] = gs.residual;
        d["method"] = std::string(to_string(gs.method));
        d["iterations"] = gs.iterations;
        d["bc"] = std::string(to_string(p.resolved_bc()));
        d["amplitudes"] = py::array_t<Complex>(gs.amplitudes.size(), gs.amplitudes.data());
        return d;
      },
      py::arg("L"), py::arg("U"), py::arg("V"), py::arg("t") = 1.0, py::arg("bc") = "auto",
      py::arg("representation") = "real", py::arg("n_low") = 2, py::arg("tol") = 1e-10, py::arg("max_iter") = 5000,
      py::arg("seed") = 1, "Half-filled ground state; amplitudes follow the sector basis order.");

  m.def(
      "run_point",
      [](int L, double U, double V, const std::vector<int>& ls, double t, const std::string& bc) {
        py::list out;
        for (const auto& r : run_point(params(L, U, V, t, bc), ls)) out.append(row_dict(r));
        return out;
      },
      py::arg("L"), py::arg("U"), py::arg("V"), py::arg("l"), py::arg("t") = 1.0, py::arg("bc") = "auto",
      "One ground-state solve, one row per block size.");

  m.def(
      "block_entropy",
      [](int L, double U, double V, int l, double t, const std::string& bc) {
        const int ls[] = {l};
        return run_point(params(L, U, V, t, bc), ls).front().entropy;
      },
      py::arg("L"), py::arg("U"), py::arg("V"), py::arg("l"), py::arg("t") = 1.0, py::arg("bc") = "auto");

  m.def(
      "local_weights",
      [](int L, double U, double V, int site, double t, const std::string& bc) {
        const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
        const auto gs = ground_state(params(L, U, V, t, bc), basis);
        const auto w = local_weights(gs.amplitudes, basis, site);
        return py::dict(py::arg("z") = w.z, py::arg("u_plus") = w.u_plus, py::arg("u_minus") = w.u_minus,
                        py::arg("w") = w.w, py::arg("entropy") = local_entanglement(w));
      },
      py::arg("L"), py::arg("U"), py::arg("V"), py::arg("site") = 0, py::arg("t") = 1.0, py::arg("bc") = "auto");

  m.def(
      "reference_entropy",
      [](const std::string& label, int L, int l) {
        const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
        const auto ref = reference_state(parse_reference_label(label), basis);
        const auto rdm = reduced_density_matrix(ref.amplitudes, basis, BlockSpec::contiguous_sites(L, l));
        return py::make_tuple(von_neumann_entropy(rdm), rdm_rank(rdm));
      },
      py::arg("label"), py::arg("L"), py::arg("l"),
      "(entropy, rank) of a contiguous block in a translation-symmetrized reference state.");

  m.def("reference_pattern", [](const std::string& label, int L) { return reference_pattern(parse_reference_label(label), L); },
        py::arg("label"), py::arg("L"));
  m.def("ps_rank", &ps_rank, py::arg("l"));
  m.def("psd_local_entropy", &psd_local_entropy, py::arg("L"));
  m.def("ps_crossover_U", &ps_crossover_U, py::arg("V"), py::arg("t") = 1.0);
  m.def(
      "perturbation_energies",
      [](double U, double V, double t) {
        const auto e = perturbation_energies(U, V, t);
        return py::dict(py::arg("five_doublons") = e.five_doublons, py::arg("four_doublons") = e.four_doublons);
      },
      py::arg("U"), py::arg("V"), py::arg("t") = 1.0);
  m.def(
      "free_fermion_ground_energy",
      [](int L, const std::string& bc, double t) {
        const ModelParams p{L, 0.0, 0.0, t, parse_boundary(bc)};
        return free_fermion_ground_energy(L, p.resolved_bc(), L / 2, L / 2, t);
      },
      py::arg("L"), py::arg("bc") = "auto", py::arg("t") = 1.0);

  m.def(
      "derivative_scan",
      [](int L, double U, int l, const std::string& v, double h, double t, const std::string& bc) {
        std::vector<std::pair<double, double>> out;
        for (const auto& d : derivative_scan(params(L, U, 0.0, t, bc), l, Range::parse(v), h)) {
          out.emplace_back(d.x, d.derivative);
        }
        return out;
      },
      py::arg("L"), py::arg("U"), py::arg("l"), py::arg("v"), py::arg("h") = 0.05, py::arg("t") = 1.0,
      py::arg("bc") = "auto", "[(V, dE/dV)] over the range \"min:max:step\".");

  m.def(
      "momentum_scan",
      [](int L, double U, double k, const std::string& v, double t, const std::string& bc) {
        const ModelParams p = params(L, U, 0.0, t, bc);
        std::vector<std::pair<double, double>> out;
        for (const auto& r : momentum_scan(p, snap_momentum(L, p.resolved_bc(), k), Range::parse(v))) {
          if (!r.ok()) throw std::runtime_error(r.error);
          out.emplace_back(r.V, r.entropy);
        }
        return out;
      },
      py::arg("L"), py::arg("U"), py::arg("k"), py::arg("v"), py::arg("t") = 1.0, py::arg("bc") = "auto",
      "[(V, entropy)] of the {+k, -k} momentum block.");

  m.def(
      "scaling_fit",
      [](const std::vector<int>& ls, const std::vector<double>& entropies) {
        if (ls.size() != entropies.size()) throw std::invalid_argument("l and entropy lengths differ");
        std::vector<BlockEntropy> pts;
        for (std::size_t i = 0; i < ls.size(); ++i) pts.push_back({ls[i], entropies[i]});
        const auto f = scaling_fit(pts);
        return py::dict(py::arg("slope") = f.slope, py::arg("intercept") = f.intercept, py::arg("r2") = f.r2);
      },
      py::arg("l"), py::arg("entropy"));

  m.def("validate", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& c : run_validation({})) out.emplace_back(c.name, c.passed, c.detail);
    return out;
  });
}
