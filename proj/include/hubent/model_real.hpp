#pragma once

#include <string>
#include <string_view>

#include "hubent/fock_basis.hpp"
#include "hubent/sparse_matrix.hpp"

namespace hubent {

enum class Boundary { automatic, periodic, antiperiodic };

[[nodiscard]] std::string_view to_string(Boundary bc);
[[nodiscard]] Boundary parse_boundary(std::string_view s);

/// Boundary that makes the half-filled ground state non-degenerate:
/// periodic for L = 4n + 2, antiperiodic for L = 4n.
[[nodiscard]] Boundary boundary_for(int L);

struct ModelParams {
  int L = 8;
  double U = 0.0;
  double V = 0.0;
  double t = 1.0;
  Boundary bc = Boundary::automatic;

  void validate() const;
  /// `bc` with `automatic` replaced by boundary_for(L).
  [[nodiscard]] Boundary resolved_bc() const;
};

/// U * (doubly occupied sites) + V * sum_j n_j n_{j+1}, bond (L-1, 0) included.
[[nodiscard]] double diagonal_energy(FockConfig c, const ModelParams& params);

/// Extended Hubbard Hamiltonian in the real-space occupation basis.
[[nodiscard]] RealHamiltonian build_real_hamiltonian(const ModelParams& params,
                                                     const SectorBasis& basis);

}  // namespace hubent
