#include "hubent/model_real.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hubent {

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::automatic: return "auto";
    case Boundary::periodic: return "periodic";
    case Boundary::antiperiodic: return "antiperiodic";
  }
  return "?";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "auto") return Boundary::automatic;
  if (s == "periodic") return Boundary::periodic;
  if (s == "antiperiodic") return Boundary::antiperiodic;
  throw std::invalid_argument("unknown boundary condition '" + std::string(s) + "'");
}

Boundary boundary_for(int L) {
  if (L % 2 != 0) throw std::invalid_argument("boundary rule needs even L");
  if (L < 4) throw std::invalid_argument("boundary rule needs L >= 4");
  return (L % 4 == 0) ? Boundary::antiperiodic : Boundary::periodic;
}

void ModelParams::validate() const {
  if (L % 2 != 0) throw std::invalid_argument("L must be even, got " + std::to_string(L));
  if (L < kMinSites || L > kMaxSites) {
    throw std::invalid_argument("L must lie in [4, 14], got " + std::to_string(L));
  }
  if (!(t > 0.0)) throw std::invalid_argument("hopping t must be positive");
}

Boundary ModelParams::resolved_bc() const {
  return bc == Boundary::automatic ? boundary_for(L) : bc;
}

double diagonal_energy(FockConfig c, const ModelParams& params) {
  const int L = params.L;
  int doublons = 0;
  int bond_sum = 0;
  for (int j = 0; j < L; ++j) {
    const int up = c.occupied(mode_index(j, Spin::up));
    const int dn = c.occupied(mode_index(j, Spin::down));
    doublons += up & dn;
    const int k = (j + 1) % L;
    const int nk = c.occupied(mode_index(k, Spin::up)) + c.occupied(mode_index(k, Spin::down));
    bond_sum += (up + dn) * nk;
  }
  return params.U * doublons + params.V * bond_sum;
}

RealHamiltonian build_real_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
  params.validate();
  if (basis.sector().L != params.L) {
    throw std::invalid_argument("basis and model disagree on L");
  }
  const int L = params.L;
  const double twist = params.resolved_bc() == Boundary::antiperiodic ? -1.0 : 1.0;

  RealHamiltonian H(basis.size());
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    row.clear();
    const FockConfig c = basis[r];
    const double diag = diagonal_energy(c, params);
    if (diag != 0.0) row.emplace_back(static_cast<std::uint32_t>(r), diag);

    // -t c^dagger_{to} c_{from} for every directed nearest-neighbour bond.
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      const double bond = (jn == 0) ? -params.t * twist : -params.t;
      for (Spin s : {Spin::up, Spin::down}) {
        const int a = mode_index(j, s);
        const int b = mode_index(jn, s);
        for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
          const auto removed = apply_mode_op(c, from, ModeOp::annihilate);
          if (!removed) continue;
          const auto added = apply_mode_op(removed->config, to, ModeOp::create);
          if (!added) continue;
          const auto col = basis.index_of(added->config);
          if (!col) throw std::logic_error("hopping left the sector");
          row.emplace_back(static_cast<std::uint32_t>(*col),
                           bond * removed->sign * added->sign);
        }
      }
    }
    H.push_row(row);
  }
  H.finish();
  return H;
}

}  // namespace hubent
