#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hubent/fock_basis.hpp"
#include "hubent/model_real.hpp"
#include "hubent/sparse_matrix.hpp"

namespace hubent {

enum class SolverMethod { automatic, dense, lanczos };

[[nodiscard]] std::string_view to_string(SolverMethod m);

inline constexpr std::size_t kDenseLimit = 4096;
inline constexpr double kDegeneracyThreshold = 1e-8;

struct SolverOptions {
  SolverMethod method = SolverMethod::automatic;
  int n_low = 2;
  double tol = 1e-10;
  int max_iter = 5000;  // matrix-vector products per eigenpair
  std::uint64_t seed = 1;
};

struct GroundStateResult {
  std::vector<double> energies;       // ascending, lowest n_low
  std::vector<Complex> amplitudes;    // eigenvector of energies[0]
  double residual = 0.0;              // |H x - E0 x|
  double gap = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  SolverMethod method = SolverMethod::dense;
  int iterations = 0;

  [[nodiscard]] double energy() const { return energies.front(); }
};

/// Raised when Lanczos fails to converge; carries the best estimate.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_energy, double residual)
      : std::runtime_error(what), best_energy_(best_energy), residual_(residual) {}
  [[nodiscard]] double best_energy() const noexcept { return best_energy_; }
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double best_energy_;
  double residual_;
};

/// Full Hermitian eigendecomposition; dimension must not exceed kDenseLimit.
template <class Scalar>
[[nodiscard]] GroundStateResult dense_ground(const SparseHamiltonian<Scalar>& H, int n_low = 2);

/// Lanczos with full reorthogonalization. Additional eigenpairs (n_low > 1)
/// are found by restarting against the already converged vectors, so exact
/// degeneracies are detected.
template <class Scalar>
[[nodiscard]] GroundStateResult lanczos_ground(const SparseHamiltonian<Scalar>& H,
                                               const SolverOptions& opts = {});

enum class Representation { real_space, momentum_space };

/// Builds H for `basis` in the requested representation and dispatches to
/// dense (dim <= kDenseLimit) or Lanczos.
[[nodiscard]] GroundStateResult ground_state(const ModelParams& params, const SectorBasis& basis,
                                             Representation rep = Representation::real_space,
                                             const SolverOptions& opts = {});

[[nodiscard]] GroundStateResult ground_state(const ModelParams& params, const Sector& sector,
                                             Representation rep = Representation::real_space,
                                             const SolverOptions& opts = {});

/// |<a, b>| for normalized vectors.
[[nodiscard]] double overlap_magnitude(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace hubent
