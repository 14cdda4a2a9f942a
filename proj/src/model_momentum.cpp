#include "hubent/model_momentum.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

namespace hubent {

namespace {

constexpr double kPi = std::numbers::pi;

struct Term {
  int mode;
  ModeOp op;
};

// Applies the operator string right-to-left (the last entry acts first).
template <std::size_t N>
std::optional<SignedConfig> apply_string(FockConfig c, const std::array<Term, N>& ops) {
  int sign = 1;
  for (std::size_t i = N; i-- > 0;) {
    const auto r = apply_mode_op(c, ops[i].mode, ops[i].op);
    if (!r) return std::nullopt;
    c = r->config;
    sign *= r->sign;
  }
  return SignedConfig{c, sign};
}

}  // namespace

double reduce_angle(double k) {
  double r = std::remainder(k, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::pair<int, double> MomentumGrid::nearest(double k) const {
  int best = 0;
  double dist = 1e300;
  for (int n = 0; n < L; ++n) {
    const double d = std::abs(reduce_angle(k - momenta[static_cast<std::size_t>(n)]));
    if (d < dist) {
      dist = d;
      best = n;
    }
  }
  return {best, dist};
}

MomentumGrid allowed_momenta(int L, Boundary bc) {
  if (L % 2 != 0 || L < 2) throw std::invalid_argument("momentum grid needs even L");
  if (bc == Boundary::automatic) bc = boundary_for(L);
  MomentumGrid g;
  g.L = L;
  g.bc = bc;
  g.momenta.reserve(static_cast<std::size_t>(L));
  for (int n = 0; n < L; ++n) {
    const int m = 2 * n + g.shift();
    // Fold m into (-L, L] exactly before converting to radians.
    const int folded = m > L ? m - 2 * L : m;
    g.momenta.push_back(kPi * folded / L);
  }
  return g;
}

ComplexHamiltonian build_momentum_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
  params.validate();
  if (basis.sector().L != params.L) throw std::invalid_argument("basis and model disagree on L");
  const int L = params.L;
  const MomentumGrid grid = allowed_momenta(L, params.resolved_bc());
  const double inv_l = 1.0 / L;

  std::vector<Complex> phase(static_cast<std::size_t>(L));
  for (int p = 0; p < L; ++p) phase[static_cast<std::size_t>(p)] = std::polar(1.0, 2.0 * kPi * p / L);

  ComplexHamiltonian H(basis.size());
  std::vector<std::pair<std::uint32_t, Complex>> row;

  // Terms are generated as H|r> = sum amp |c'>, i.e. column r. H is
  // Hermitian, so row r receives conj(amp) at column c'.
  auto emit = [&](FockConfig target, Complex amp) {
    const auto col = basis.index_of(target);
    if (!col) throw std::logic_error("momentum operator left the sector");
    row.emplace_back(static_cast<std::uint32_t>(*col), std::conj(amp));
  };

  for (std::size_t r = 0; r < basis.size(); ++r) {
    row.clear();
    const FockConfig c = basis[r];

    double kinetic = 0.0;
    for (int n = 0; n < L; ++n) {
      const double eps = -2.0 * params.t * std::cos(grid.momenta[static_cast<std::size_t>(n)]);
      kinetic += eps * (c.occupied(mode_index(n, Spin::up)) + c.occupied(mode_index(n, Spin::down)));
    }
    if (kinetic != 0.0) row.emplace_back(static_cast<std::uint32_t>(r), Complex{kinetic, 0.0});

    // (U/L) sum c+_{k+q,up} c+_{k'-q,dn} c_{k',dn} c_{k,up}
    if (params.U != 0.0) {
      for (int n = 0; n < L; ++n) {
        if (!c.occupied(mode_index(n, Spin::up))) continue;
        for (int m = 0; m < L; ++m) {
          if (!c.occupied(mode_index(m, Spin::down))) continue;
          for (int p = 0; p < L; ++p) {
            const std::array<Term, 4> ops{{{mode_index(grid.add(n, p), Spin::up), ModeOp::create},
                                           {mode_index(grid.add(m, -p), Spin::down), ModeOp::create},
                                           {mode_index(m, Spin::down), ModeOp::annihilate},
                                           {mode_index(n, Spin::up), ModeOp::annihilate}}};
            if (const auto res = apply_string(c, ops)) emit(res->config, params.U * inv_l * res->sign);
          }
        }
      }
    }

    // (V/L) sum_q e^{iq} rho_q rho_{-q}, rho_q = sum_{k,s} c+_{k+q,s} c_{k,s}
    if (params.V != 0.0) {
      for (int p = 0; p < L; ++p) {
        const Complex w = params.V * inv_l * phase[static_cast<std::size_t>(p)];
        for (int m2 = 0; m2 < 2 * L; ++m2) {
          if (!c.occupied(m2)) continue;
          const Spin s2 = mode_spin(m2);
          const int created2 = mode_index(grid.add(mode_site(m2), -p), s2);
          for (int m1 = 0; m1 < 2 * L; ++m1) {
            const Spin s1 = mode_spin(m1);
            const int created1 = mode_index(grid.add(mode_site(m1), p), s1);
            const std::array<Term, 4> ops{{{created1, ModeOp::create},
                                           {m1, ModeOp::annihilate},
                                           {created2, ModeOp::create},
                                           {m2, ModeOp::annihilate}}};
            if (const auto res = apply_string(c, ops)) emit(res->config, w * static_cast<double>(res->sign));
          }
        }
      }
    }
    H.push_row(row);
  }
  H.finish();
  return H;
}

int total_momentum_index(FockConfig c, const MomentumGrid& grid) {
  int sum = 0;
  for (int m = 0; m < 2 * grid.L; ++m) {
    if (c.occupied(m)) sum += 2 * mode_site(m) + grid.shift();
  }
  return sum % (2 * grid.L);
}

double total_momentum(FockConfig c, const MomentumGrid& grid) {
  const int idx = total_momentum_index(c, grid);
  return reduce_angle(kPi * idx / grid.L);
}

}  // namespace hubent
