#pragma once

#include <vector>

#include "hubent/fock_basis.hpp"
#include "hubent/model_real.hpp"
#include "hubent/sparse_matrix.hpp"

namespace hubent {

/// Allowed single-particle momenta of an L-site ring.
///
/// k_n = pi * (2n + s) / L with s = 1 for antiperiodic and 0 for periodic
/// boundaries, n = 0..L-1, reported reduced to (-pi, pi]. Momentum mode
/// (n, spin) uses the same mode layout as a real-space site.
struct MomentumGrid {
  int L = 0;
  Boundary bc = Boundary::periodic;
  std::vector<double> momenta;

  [[nodiscard]] int shift() const noexcept { return bc == Boundary::antiperiodic ? 1 : 0; }
  /// Index of k_n + 2 pi p / L.
  [[nodiscard]] int add(int n, int p) const noexcept { return ((n + p) % L + L) % L; }
  /// Grid index closest to `k` (radians, any branch), with its distance.
  [[nodiscard]] std::pair<int, double> nearest(double k) const;
  /// Index of -k_n.
  [[nodiscard]] int negate(int n) const noexcept { return ((-n - shift()) % L + L) % L; }
};

/// Reduces an angle to (-pi, pi].
[[nodiscard]] double reduce_angle(double k);

[[nodiscard]] MomentumGrid allowed_momenta(int L, Boundary bc);

/// Extended Hubbard Hamiltonian in the momentum-occupation basis. The basis
/// must be a sector of momentum modes on the grid of params.resolved_bc().
[[nodiscard]] ComplexHamiltonian build_momentum_hamiltonian(const ModelParams& params,
                                                            const SectorBasis& basis);

/// Total crystal momentum of the occupied modes in units of pi / L, mod 2L.
[[nodiscard]] int total_momentum_index(FockConfig c, const MomentumGrid& grid);

/// Total crystal momentum reduced to (-pi, pi].
[[nodiscard]] double total_momentum(FockConfig c, const MomentumGrid& grid);

}  // namespace hubent
