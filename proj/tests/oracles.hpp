#pragma once

// Reference implementations used only by the tests. They share no code
// with the library beyond the basis ordering they are compared against.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Sum of the lowest n_up + n_dn one-particle energies of the L-site ring,
/// twist = -1 on the wrap bond for antiperiodic.
double free_fermion_energy(int L, double twist, int n_up, int n_dn, double t = 1.0);

/// Full-Fock-space extended Hubbard Hamiltonian from Jordan-Wigner
/// Kronecker products; state index bit m = occupation of mode 2 j + s.
Eigen::MatrixXd fock_space_hamiltonian(int L, double U, double V, double t, double twist);

/// Rows/columns of `full` restricted to the given configurations.
Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& full, const std::vector<unsigned>& configs);

/// (-1)^(inversions) of reordering the ascending occupied-mode list so
/// that modes in `block_mask` come first, by explicit adjacent swaps.
int reorder_parity(unsigned config, unsigned block_mask);

/// Block density matrix over every configuration of the block modes,
/// built from per-pair reorder parities.
Eigen::MatrixXcd density_matrix(const std::vector<unsigned>& configs,
                                const std::vector<std::complex<double>>& amplitudes,
                                unsigned block_mask);

double entropy_bits(const Eigen::VectorXd& eigenvalues);

}  // namespace oracle
