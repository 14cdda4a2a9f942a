#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hubent/fock_basis.hpp"
#include "hubent/model_real.hpp"
#include "hubent/sparse_matrix.hpp"

namespace hubent {

// Closed-form reference states and formulas for the half-filled chain.

enum class ReferenceLabel { ps_a, ps_b, ps_c, ps_d, cdw };

[[nodiscard]] std::string_view to_string(ReferenceLabel label);
[[nodiscard]] ReferenceLabel parse_reference_label(std::string_view s);

/// Site pattern of the undisplaced configuration, e.g. PS(a) at L=10 is
/// "DDDDD00000" and PS(d) is "dDDDDu0000".
[[nodiscard]] std::string reference_pattern(ReferenceLabel label, int L);

/// Equal-weight, zero-phase superposition of the distinct cyclic
/// translations of a reference configuration (two configs for CDW).
struct ReferenceState {
  ReferenceLabel label = ReferenceLabel::cdw;
  int L = 0;
  std::vector<FockConfig> configs;   // distinct translations, ascending
  std::vector<Complex> amplitudes;   // over the half-filled sector basis
};

[[nodiscard]] ReferenceState reference_state(ReferenceLabel label, const SectorBasis& basis);
[[nodiscard]] ReferenceState reference_state(ReferenceLabel label, int L);

/// Translates every site by `shift` (no fermionic phase).
[[nodiscard]] FockConfig translate_sites(FockConfig c, int L, int shift);

/// Names the configuration if it matches a reference pattern up to
/// translation, reflection and global spin flip; otherwise "other".
[[nodiscard]] std::string classify_config(FockConfig c, int L);

/// Number of nonzero reduced-density eigenvalues of the PS(a) superposition
/// for a block of l sites: (l^2 + l + 2) / 2.
[[nodiscard]] int ps_rank(int l);

/// Local entanglement of the PS(d) superposition on L sites.
[[nodiscard]] double psd_local_entropy(int L);

/// Second-order strong-coupling energies of the two L=10 phase-separated
/// configurations. Classical parts: five doublons give 5U + 16V, four
/// doublons flanked by two singles give 4U + 16V.
struct PsEnergies {
  double five_doublons = 0.0;  // 5U + 16V + 4 t^2 / V
  double four_doublons = 0.0;  // 4U + 16V + (3/2) t^2 / V
};

[[nodiscard]] PsEnergies perturbation_energies(double U, double V, double t = 1.0);

/// U at which the two perturbative energies cross: -2.5 t^2 / V.
[[nodiscard]] double ps_crossover_U(double V, double t = 1.0);

/// Sum of the lowest n_up and n_dn single-particle energies -2t cos k on
/// the grid of `bc`. Throws if the Fermi level is degenerate.
[[nodiscard]] double free_fermion_ground_energy(int L, Boundary bc, int n_up, int n_dn,
                                                double t = 1.0);

}  // namespace hubent
