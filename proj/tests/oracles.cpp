#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

double free_fermion_energy(int L, double twist, int n_up, int n_dn, double t) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
  for (int j = 0; j < L; ++j) {
    const int k = (j + 1) % L;
    const double amp = (k == 0 ? twist : 1.0) * -t;
    h(j, k) += amp;
    h(k, j) += amp;
  }
  const Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
  return e.head(n_up).sum() + e.head(n_dn).sum();
}

namespace {

// Operator on mode m of an n-mode space, with Z strings on modes below m.
Eigen::MatrixXd annihilator(int m, int n_modes) {
  Eigen::Matrix2d a;
  a << 0, 1, 0, 0;
  const Eigen::Matrix2d z = Eigen::Vector2d(1, -1).asDiagonal();
  Eigen::MatrixXd op = Eigen::MatrixXd::Identity(1, 1);
  // Mode n-1 is the most significant factor.
  for (int q = n_modes - 1; q >= 0; --q) {
    Eigen::MatrixXd f = q == m ? Eigen::MatrixXd(a) : q < m ? Eigen::MatrixXd(z) : Eigen::MatrixXd::Identity(2, 2);
    op = Eigen::kroneckerProduct(op, f).eval();
  }
  return op;
}

}  // namespace

Eigen::MatrixXd fock_space_hamiltonian(int L, double U, double V, double t, double twist) {
  const int n_modes = 2 * L;
  std::vector<Eigen::MatrixXd> c;
  for (int m = 0; m < n_modes; ++m) c.push_back(annihilator(m, n_modes));
  const auto dim = c[0].rows();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  auto n = [&](int m) { return Eigen::MatrixXd(c[m].transpose() * c[m]); };
  for (int j = 0; j < L; ++j) {
    const int k = (j + 1) % L;
    const double amp = (k == 0 ? twist : 1.0) * -t;
    for (int s = 0; s < 2; ++s) {
      const Eigen::MatrixXd hop = c[2 * j + s].transpose() * c[2 * k + s];
      H += amp * (hop + hop.transpose());
    }
    H += U * n(2 * j) * n(2 * j + 1);
    H += V * (n(2 * j) + n(2 * j + 1)) * (n(2 * k) + n(2 * k + 1));
  }
  return H;
}

Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& full, const std::vector<unsigned>& configs) {
  const auto d = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index s = 0; s < d; ++s) out(r, s) = full(configs[r], configs[s]);
  }
  return out;
}

int reorder_parity(unsigned config, unsigned block_mask) {
  std::vector<int> keys;  // 0 for block modes, 1 for the rest, in mode order
  for (int m = 0; m < 32; ++m) {
    if (config >> m & 1U) keys.push_back(block_mask >> m & 1U ? 0 : 1);
  }
  int swaps = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = 0; j + 1 < keys.size() - i; ++j) {
      if (keys[j] > keys[j + 1]) {
        std::swap(keys[j], keys[j + 1]);
        ++swaps;
      }
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

Eigen::MatrixXcd density_matrix(const std::vector<unsigned>& configs,
                                const std::vector<std::complex<double>>& amplitudes,
                                unsigned block_mask) {
  std::map<unsigned, int> block_index;
  for (unsigned c : configs) block_index.emplace(c & block_mask, 0);
  int next = 0;
  for (auto& [key, idx] : block_index) idx = next++;
  // env part -> list of (block index, signed amplitude)
  std::map<unsigned, std::vector<std::pair<int, std::complex<double>>>> by_env;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const unsigned c = configs[i];
    by_env[c & ~block_mask].emplace_back(block_index[c & block_mask],
                                         double(reorder_parity(c, block_mask)) * amplitudes[i]);
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(next, next);
  for (const auto& [env, entries] : by_env) {
    for (const auto& [a, pa] : entries) {
      for (const auto& [b, pb] : entries) rho(a, b) += pa * std::conj(pb);
    }
  }
  return rho;
}

double entropy_bits(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p > 1e-12) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace oracle
