#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "hubent/model_momentum.hpp"
#include "hubent/model_real.hpp"

using namespace hubent;
using std::numbers::pi;

namespace {

std::vector<double> sorted_momenta(int L, Boundary bc) {
  auto k = allowed_momenta(L, bc).momenta;
  std::sort(k.begin(), k.end());
  return k;
}

void check_same(const std::vector<double>& got, std::vector<double> want) {
  std::sort(want.begin(), want.end());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("allowed momenta") {
  check_same(sorted_momenta(8, Boundary::antiperiodic),
             {-7 * pi / 8, -5 * pi / 8, -3 * pi / 8, -pi / 8, pi / 8, 3 * pi / 8, 5 * pi / 8, 7 * pi / 8});
  check_same(sorted_momenta(10, Boundary::periodic),
             {0, pi / 5, -pi / 5, 2 * pi / 5, -2 * pi / 5, 3 * pi / 5, -3 * pi / 5, 4 * pi / 5, -4 * pi / 5, pi});
  check_same(sorted_momenta(4, Boundary::antiperiodic), {-3 * pi / 4, -pi / 4, pi / 4, 3 * pi / 4});
  check_same(sorted_momenta(8, Boundary::automatic), sorted_momenta(8, Boundary::antiperiodic));
  CHECK_THROWS((void)allowed_momenta(7, Boundary::periodic));
}

TEST_CASE("grid arithmetic") {
  const auto g = allowed_momenta(8, Boundary::antiperiodic);
  for (int n = 0; n < 8; ++n) {
    CHECK(reduce_angle(g.momenta[g.negate(n)] + g.momenta[n]) == doctest::Approx(0.0));
    const auto [idx, dist] = g.nearest(g.momenta[n] + 2 * pi);
    CHECK(idx == n);
    CHECK(dist < 1e-12);
  }
  CHECK(reduce_angle(3 * pi) == doctest::Approx(pi));
  CHECK(reduce_angle(-pi) == doctest::Approx(pi));
}

TEST_CASE("free fermions are diagonal in momentum space") {
  const SectorBasis basis = enumerate_sector(Sector::half_filled(8));
  const auto H = build_momentum_hamiltonian({8, 0, 0, 1, Boundary::automatic}, basis);
  CHECK(H.max_offdiagonal_per_row() == 0);
  double lowest = 1e300;
  for (std::size_t r = 0; r < basis.size(); ++r) lowest = std::min(lowest, std::real(H.diagonal(r)));
  CHECK(lowest == doctest::Approx(-8 * (std::cos(pi / 8) + std::cos(3 * pi / 8))).epsilon(1e-12));
  CHECK(lowest == doctest::Approx(-10.45250).epsilon(1e-6));
}

TEST_CASE("spectra agree with the real-space construction") {
  struct Case {
    Sector sector;
    double U, V;
  };
  const Case cases[] = {{{4, 1, 1}, -2.0, 0.7}, {{4, 1, 1}, 3.0, -1.1}, {{4, 2, 2}, 1.5, 0.4},
                        {{6, 3, 3}, -1.0, -0.5}, {{6, 2, 3}, 2.0, 1.0}};
  for (const auto& c : cases) {
    const SectorBasis basis = enumerate_sector(c.sector);
    const ModelParams p{c.sector.L, c.U, c.V, 1.0, Boundary::automatic};
    const Eigen::VectorXd real =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_real_hamiltonian(p, basis).to_dense()).eigenvalues();
    const Eigen::VectorXd mom =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(build_momentum_hamiltonian(p, basis).to_dense()).eigenvalues();
    CHECK((real - mom).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("momentum Hamiltonian is Hermitian and conserves total momentum") {
  for (int L : {6, 8}) {
    const SectorBasis basis = enumerate_sector(Sector::half_filled(L));
    const auto grid = allowed_momenta(L, Boundary::automatic);
    const auto H = build_momentum_hamiltonian({L, -2.0, -0.5, 1.0, Boundary::automatic}, basis);
    CHECK(H.hermiticity_defect() < 1e-12);
    bool conserved = true;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (auto p = H.row_ptr()[r]; p < H.row_ptr()[r + 1]; ++p) {
        conserved = conserved && total_momentum_index(basis[r], grid) ==
                                     total_momentum_index(basis[H.cols()[p]], grid);
      }
    }
    CHECK(conserved);
  }
}

TEST_CASE("total momentum") {
  const auto g = allowed_momenta(8, Boundary::antiperiodic);
  CHECK(total_momentum(FockConfig{}, g) == 0.0);
  // modes of momentum index 0 (pi/8) and its partner -pi/8, spin up
  const int n = 0, partner = g.negate(0);
  CHECK(total_momentum(FockConfig{(Word{1} << (2 * n)) | (Word{1} << (2 * partner))}, g) == doctest::Approx(0.0));
  CHECK(total_momentum(FockConfig{Word{1} << 2}, g) == doctest::Approx(3 * pi / 8));
  CHECK(total_momentum_index(FockConfig{Word{1} << 2}, g) == 3);
}
