#pragma once

#include <string>
#include <vector>

#include "hubent/sweep.hpp"

namespace hubent {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle suite behind `hubent validate`: free-fermion energies, real vs
/// momentum spectra, PS(a) rank law, CDW saturation, PS(d) local entropy,
/// and the reduced-density-matrix and solver invariants.
[[nodiscard]] std::vector<CheckResult> run_validation(const SolverOptions& opts = {},
                                                      const ProgressFn& progress = {});

}  // namespace hubent
