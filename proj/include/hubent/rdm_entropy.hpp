#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hubent/eigensolver.hpp"
#include "hubent/fock_basis.hpp"

namespace hubent {

inline constexpr double kEntropyFloor = 1e-12;
inline constexpr double kRankTolerance = 1e-10;

/// One symmetry block of a reduced density matrix: all block configurations
/// sharing (N_S, 2 Sz_S). The state's coefficients are kept as a
/// block-by-environment matrix psi, so rho = psi psi^dagger; the spectrum is
/// taken from whichever of psi psi^dagger and psi^dagger psi is smaller.
struct RdmSector {
  BlockQuantumNumbers qn;
  std::vector<FockConfig> block_configs;  // rows of psi
  Eigen::MatrixXcd psi;

  [[nodiscard]] Eigen::MatrixXcd rho() const { return psi * psi.adjoint(); }
  /// Eigenvalues of rho, ascending, one per block configuration.
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;
  /// Largest |G - G^dagger| of the Gram matrix the spectrum is taken from.
  [[nodiscard]] double hermiticity_defect() const;
};

/// Block-diagonal reduced density matrix of a pure state on a set of modes.
/// Elements between different (N_S, Sz_S) never exist in this layout.
struct ReducedDensityMatrix {
  BlockSpec block;
  std::vector<RdmSector> sectors;  // ascending in qn
  double trace = 0.0;
  bool ill_defined = false;  // parent state was flagged degenerate

  [[nodiscard]] std::size_t dimension() const;
  /// Every eigenvalue of every sector, ascending.
  [[nodiscard]] std::vector<double> spectrum() const;
  /// Largest |rho - rho^dagger| over all sectors.
  [[nodiscard]] double hermiticity_defect() const;
};

[[nodiscard]] ReducedDensityMatrix reduced_density_matrix(std::span<const Complex> amplitudes,
                                                          const SectorBasis& basis,
                                                          const BlockSpec& block);

[[nodiscard]] ReducedDensityMatrix reduced_density_matrix(const GroundStateResult& state,
                                                          const SectorBasis& basis,
                                                          const BlockSpec& block);

/// -sum lambda log2 lambda over eigenvalues above `eig_floor`. Throws
/// std::runtime_error if the eigenvalues do not sum to 1 within 1e-6.
[[nodiscard]] double von_neumann_entropy(const ReducedDensityMatrix& rdm,
                                         double eig_floor = kEntropyFloor);

[[nodiscard]] int rdm_rank(const ReducedDensityMatrix& rdm, double tol = kRankTolerance);

/// Single-site weights: w = <n_up n_dn>, u+ = <n_up> - w, u- = <n_dn> - w,
/// z = 1 - u+ - u- - w.
struct LocalWeights {
  double z = 0.0;
  double u_plus = 0.0;
  double u_minus = 0.0;
  double w = 0.0;
};

[[nodiscard]] LocalWeights local_weights(std::span<const Complex> amplitudes,
                                         const SectorBasis& basis, int site);

/// Shannon entropy (bits) of (z, u+, u-, w).
[[nodiscard]] double local_entanglement(const LocalWeights& weights);

/// Configuration with the largest |amplitude|; near-ties (relative 1e-9)
/// resolve to the lowest bit pattern.
[[nodiscard]] FockConfig dominant_config(std::span<const Complex> amplitudes,
                                         const SectorBasis& basis);

/// -sum p log2 p with 0 log 0 = 0.
[[nodiscard]] double shannon_bits(std::span<const double> probabilities);

}  // namespace hubent
