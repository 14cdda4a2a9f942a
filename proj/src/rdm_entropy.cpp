#include "hubent/rdm_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace hubent {

namespace {

struct SectorBuilder {
  std::vector<FockConfig> block_configs;
  std::unordered_map<Word, Eigen::Index> block_index;
  std::unordered_map<Word, Eigen::Index> env_index;
  // (block row, env column, amplitude) triples
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Complex>> entries;
};

// The smaller of psi psi^dagger and psi^dagger psi; both share the nonzero spectrum.
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& psi) {
  if (psi.rows() <= psi.cols()) return psi * psi.adjoint();
  return psi.adjoint() * psi;
}

}  // namespace

Eigen::VectorXd RdmSector::eigenvalues() const {
  const Eigen::MatrixXcd g = gram(psi);
  Eigen::VectorXd ev(psi.rows());
  ev.setZero();
  if (g.rows() == 1) {
    ev(ev.size() - 1) = g(0, 0).real();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    ev.tail(g.rows()) = es.eigenvalues();
  }
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

double RdmSector::hermiticity_defect() const {
  const Eigen::MatrixXcd g = gram(psi);
  return (g - g.adjoint()).cwiseAbs().maxCoeff();
}

std::size_t ReducedDensityMatrix::dimension() const {
  std::size_t d = 0;
  for (const auto& s : sectors) d += s.block_configs.size();
  return d;
}

std::vector<double> ReducedDensityMatrix::spectrum() const {
  std::vector<double> out;
  out.reserve(dimension());
  for (const auto& s : sectors) {
    const Eigen::VectorXd ev = s.eigenvalues();
    out.insert(out.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double ReducedDensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& s : sectors) worst = std::max(worst, s.hermiticity_defect());
  return worst;
}

ReducedDensityMatrix reduced_density_matrix(std::span<const Complex> amplitudes,
                                            const SectorBasis& basis, const BlockSpec& block) {
  if (amplitudes.size() != basis.size()) throw std::invalid_argument("state does not match basis");
  if (block.total_modes != basis.sector().n_modes()) {
    throw std::invalid_argument("block was defined for a different mode count");
  }

  std::map<BlockQuantumNumbers, SectorBuilder> builders;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex a = amplitudes[i];
    if (a == Complex{}) continue;
    const SplitConfig sp = split_config(basis[i], block);
    auto& sb = builders[block_quantum_numbers(sp.block, block)];
    auto [bit, bnew] = sb.block_index.try_emplace(sp.block.bits, static_cast<Eigen::Index>(sb.block_index.size()));
    if (bnew) sb.block_configs.push_back(sp.block);
    auto [eit, enew] = sb.env_index.try_emplace(sp.env.bits, static_cast<Eigen::Index>(sb.env_index.size()));
    sb.entries.emplace_back(bit->second, eit->second, a * static_cast<double>(sp.sign));
  }

  ReducedDensityMatrix rdm;
  rdm.block = block;
  rdm.sectors.reserve(builders.size());
  for (auto& [qn, sb] : builders) {
    const auto nb = static_cast<Eigen::Index>(sb.block_configs.size());
    const auto ne = static_cast<Eigen::Index>(sb.env_index.size());
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(nb, ne);
    for (const auto& [b, e, a] : sb.entries) psi(b, e) += a;

    // Present block configurations in ascending bit order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(nb));
    for (Eigen::Index k = 0; k < nb; ++k) order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
      return sb.block_configs[static_cast<std::size_t>(x)] < sb.block_configs[static_cast<std::size_t>(y)];
    });
    Eigen::MatrixXcd sorted(nb, ne);
    RdmSector sec;
    sec.qn = qn;
    for (Eigen::Index k = 0; k < nb; ++k) {
      sorted.row(k) = psi.row(order[static_cast<std::size_t>(k)]);
      sec.block_configs.push_back(sb.block_configs[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]);
    }
    rdm.trace += sorted.squaredNorm();
    sec.psi = std::move(sorted);
    rdm.sectors.push_back(std::move(sec));
  }
  return rdm;
}

ReducedDensityMatrix reduced_density_matrix(const GroundStateResult& state, const SectorBasis& basis,
                                            const BlockSpec& block) {
  auto rdm = reduced_density_matrix(state.amplitudes, basis, block);
  rdm.ill_defined = state.degenerate;
  return rdm;
}

double von_neumann_entropy(const ReducedDensityMatrix& rdm, double eig_floor) {
  double sum = 0.0;
  double entropy = 0.0;
  for (const auto& s : rdm.sectors) {
    const Eigen::VectorXd ev = s.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double lam = ev(i);
      sum += lam;
      if (lam > eig_floor) entropy -= lam * std::log2(lam);
    }
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::runtime_error("reduced density matrix eigenvalues sum to " + std::to_string(sum));
  }
  return std::max(entropy, 0.0);
}

int rdm_rank(const ReducedDensityMatrix& rdm, double tol) {
  int rank = 0;
  for (const auto& s : rdm.sectors) {
    const Eigen::VectorXd ev = s.eigenvalues();
    rank += static_cast<int>((ev.array() > tol).count());
  }
  return rank;
}

LocalWeights local_weights(std::span<const Complex> amplitudes, const SectorBasis& basis, int site) {
  if (amplitudes.size() != basis.size()) throw std::invalid_argument("state does not match basis");
  if (site < 0 || site >= basis.sector().L) throw std::invalid_argument("site out of range");
  const int mu = mode_index(site, Spin::up);
  const int md = mode_index(site, Spin::down);
  double n_up = 0.0;
  double n_dn = 0.0;
  double both = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double p = std::norm(amplitudes[i]);
    total += p;
    const bool u = basis[i].occupied(mu);
    const bool d = basis[i].occupied(md);
    if (u) n_up += p;
    if (d) n_dn += p;
    if (u && d) both += p;
  }
  LocalWeights lw;
  lw.w = both / total;
  lw.u_plus = n_up / total - lw.w;
  lw.u_minus = n_dn / total - lw.w;
  lw.z = 1.0 - lw.u_plus - lw.u_minus - lw.w;
  return lw;
}

double shannon_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double local_entanglement(const LocalWeights& weights) {
  const double p[] = {weights.z, weights.u_plus, weights.u_minus, weights.w};
  return shannon_bits(p);
}

FockConfig dominant_config(std::span<const Complex> amplitudes, const SectorBasis& basis) {
  if (amplitudes.size() != basis.size() || basis.size() == 0) {
    throw std::invalid_argument("state does not match basis");
  }
  double peak = 0.0;
  for (const auto& a : amplitudes) peak = std::max(peak, std::abs(a));
  // The basis is sorted, so the first near-maximal entry has the lowest bits.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (std::abs(amplitudes[i]) >= peak * (1.0 - 1e-9)) return basis[i];
  }
  return basis[0];
}

}  // namespace hubent
