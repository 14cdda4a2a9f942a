#include "hubent/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "hubent/model_momentum.hpp"

namespace hubent {

std::string_view to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::automatic: return "auto";
    case SolverMethod::dense: return "dense";
    case SolverMethod::lanczos: return "lanczos";
  }
  return "?";
}

namespace {

// Rotates the vector so its largest-magnitude entry (first one on ties) is
// real and positive.
void fix_phase(std::vector<Complex>& v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const Complex ph = std::conj(v[best]) / best_abs;
  for (auto& x : v) x *= ph;
  v[best] = Complex{std::abs(v[best]), 0.0};
}

template <class Scalar>
std::vector<Complex> to_complex(std::span<const Scalar> x) {
  return std::vector<Complex>(x.begin(), x.end());
}

template <class Scalar>
double residual_norm(const SparseHamiltonian<Scalar>& H, std::span<const Scalar> x, double e) {
  std::vector<Scalar> hx(x.size());
  H.multiply(x, hx);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(hx[i] - e * x[i]);
  return std::sqrt(acc);
}

void finish_result(GroundStateResult& r) {
  r.gap = r.energies.size() > 1 ? r.energies[1] - r.energies[0]
                                : std::numeric_limits<double>::infinity();
  r.degenerate = r.gap < kDegeneracyThreshold;
  fix_phase(r.amplitudes);
}

template <class Scalar>
Scalar random_entry(std::minstd_rand& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if constexpr (is_complex_v<Scalar>) {
    const double re = u(rng);
    return Scalar{re, u(rng)};
  } else {
    return u(rng);
  }
}

template <class Scalar>
struct LanczosPair {
  double energy = 0.0;
  std::vector<Scalar> vector;
  double residual = 0.0;
  int iterations = 0;
};

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Classical Gram-Schmidt against the columns of Q, repeated once when the
// first pass removed most of the norm. Returns the accumulated coefficients.
template <class Scalar>
Vec<Scalar> project_out(const Eigen::Ref<const Mat<Scalar>>& Q, Eigen::Ref<Vec<Scalar>> w) {
  Vec<Scalar> total = Vec<Scalar>::Zero(Q.cols());
  if (Q.cols() == 0) return total;
  for (int pass = 0; pass < 2; ++pass) {
    const double before = w.norm();
    const Vec<Scalar> c = Q.adjoint() * w;
    w.noalias() -= Q * c;
    total += c;
    if (w.norm() > 0.7 * before) break;
  }
  return total;
}

// Krylov vectors kept at once; bounded so large sectors stay within ~1 GiB.
template <class Scalar>
Eigen::Index krylov_capacity(std::size_t n, const SolverOptions& opts, std::size_t free_dims) {
  const std::size_t by_memory = (std::size_t{1} << 30) / (n * sizeof(Scalar));
  std::size_t cap = std::clamp<std::size_t>(by_memory, 24, 120);
  cap = std::min<std::size_t>(cap, static_cast<std::size_t>(std::max(opts.max_iter, 2)));
  return static_cast<Eigen::Index>(std::min(cap, free_dims));
}

// Thick-restart Lanczos for the lowest eigenpair orthogonal to the columns
// of `locked`. The projected matrix is kept dense and filled from the
// Gram-Schmidt coefficients, so after a restart the kept Ritz values sit on
// its diagonal and their couplings to the next vector appear on their own.
template <class Scalar>
LanczosPair<Scalar> lanczos_lowest(const SparseHamiltonian<Scalar>& H, const Mat<Scalar>& locked,
                                   const SolverOptions& opts, std::minstd_rand& rng) {
  const auto n = static_cast<Eigen::Index>(H.dimension());
  const Eigen::Index free_dims = n - locked.cols();
  const Eigen::Index cap = krylov_capacity<Scalar>(H.dimension(), opts, static_cast<std::size_t>(free_dims));
  Mat<Scalar> Q(n, cap);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(cap, cap);

  Vec<Scalar> w(n);
  for (auto& x : w) x = random_entry<Scalar>(rng);
  project_out<Scalar>(locked, w);
  if (w.norm() < 1e-300) throw SolverError("Lanczos start vector vanished", NAN, NAN);
  Q.col(0) = w / w.norm();
  Eigen::Index m = 1;  // columns of Q in use

  auto finish = [&](const Eigen::VectorXd& coeffs, double theta, int iter) {
    Vec<Scalar> x = Q.leftCols(m) * coeffs.cast<Scalar>();
    x /= x.norm();
    std::vector<Scalar> out(x.data(), x.data() + n);
    const double res = residual_norm<Scalar>(H, out, theta);
    return LanczosPair<Scalar>{theta, std::move(out), res, iter};
  };

  double prev = std::numeric_limits<double>::infinity();
  double best = prev;
  double best_res = prev;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
  for (int iter = 1;; ++iter) {
    const Eigen::Index j = m - 1;
    H.multiply(std::span<const Scalar>(Q.col(j).data(), static_cast<std::size_t>(n)),
               std::span<Scalar>(w.data(), static_cast<std::size_t>(n)));
    // The coefficients against the basis form column j of the projected matrix.
    const Vec<Scalar> c = project_out<Scalar>(Q.leftCols(m), w);
    project_out<Scalar>(locked, w);
    for (Eigen::Index i = 0; i < m; ++i) T(i, j) = std::real(c(i));
    for (Eigen::Index i = 0; i < j; ++i) T(j, i) = T(i, j);
    const double b = w.norm();

    const bool invariant = b < 1e-12 * std::max(1.0, std::abs(T(j, j)));
    const bool full = m == cap;
    // The projected eigenproblem costs O(m^3); on long runs solve it only
    // every few steps and whenever a restart or termination needs it.
    const bool check = m <= 32 || iter % 4 == 0 || full || invariant || iter >= opts.max_iter;
    if (!check) {
      Q.col(m++) = w / b;
      continue;
    }
    ritz.compute(T.topLeftCorner(m, m));
    const double theta = ritz.eigenvalues()(0);
    const double res_est = b * std::abs(ritz.eigenvectors()(m - 1, 0));
    best = theta;
    best_res = res_est;

    const bool energy_ok = std::abs(theta - prev) < opts.tol;
    prev = theta;
    if ((energy_ok && res_est < 10.0 * opts.tol) || invariant) {
      auto pair = finish(ritz.eigenvectors().col(0), theta, iter);
      if (pair.residual < 10.0 * opts.tol || invariant) return pair;
    }
    if (iter >= opts.max_iter || (invariant && m >= free_dims)) {
      throw SolverError("Lanczos did not converge within " + std::to_string(opts.max_iter) +
                            " iterations",
                        best, best_res);
    }

    if (full) {
      // Keep the lowest half of the Ritz vectors and continue from w.
      const Eigen::Index keep = std::max<Eigen::Index>(1, m / 2);
      const Mat<Scalar> kept = Q.leftCols(m) * ritz.eigenvectors().leftCols(keep).cast<Scalar>();
      Q.leftCols(keep) = kept;
      T.setZero();
      for (Eigen::Index i = 0; i < keep; ++i) T(i, i) = ritz.eigenvalues()(i);
      m = keep;
    }
    Q.col(m++) = w / b;
  }
}

}  // namespace

template <class Scalar>
GroundStateResult dense_ground(const SparseHamiltonian<Scalar>& H, int n_low) {
  const std::size_t n = H.dimension();
  if (n == 0) throw std::invalid_argument("empty Hamiltonian");
  if (n > kDenseLimit) {
    throw std::invalid_argument("dense diagonalization limited to dimension " +
                                std::to_string(kDenseLimit) + ", got " + std::to_string(n));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(H.to_dense());
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed", NAN, NAN);

  GroundStateResult r;
  r.method = SolverMethod::dense;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(n_low, 1)), n);
  for (std::size_t i = 0; i < k; ++i) r.energies.push_back(es.eigenvalues()(static_cast<Eigen::Index>(i)));
  std::vector<Scalar> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
  r.residual = residual_norm<Scalar>(H, x, r.energies[0]);
  r.amplitudes = to_complex<Scalar>(x);
  finish_result(r);
  return r;
}

template <class Scalar>
GroundStateResult lanczos_ground(const SparseHamiltonian<Scalar>& H, const SolverOptions& opts) {
  const std::size_t n = H.dimension();
  if (n < 2) throw std::invalid_argument("Lanczos needs dimension >= 2");
  std::minstd_rand rng(static_cast<std::minstd_rand::result_type>(opts.seed == 0 ? 1 : opts.seed));

  const auto want = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.n_low, 1)), n);
  Mat<Scalar> locked(static_cast<Eigen::Index>(n), 0);
  std::vector<LanczosPair<Scalar>> pairs;
  int iterations = 0;
  for (std::size_t i = 0; i < want; ++i) {
    auto p = lanczos_lowest<Scalar>(H, locked, opts, rng);
    iterations += p.iterations;
    locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
    locked.col(locked.cols() - 1) = Eigen::Map<const Vec<Scalar>>(p.vector.data(), static_cast<Eigen::Index>(n));
    pairs.push_back(std::move(p));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.energy < b.energy; });

  GroundStateResult r;
  r.method = SolverMethod::lanczos;
  r.iterations = iterations;
  for (const auto& p : pairs) r.energies.push_back(p.energy);
  r.residual = pairs.front().residual;
  r.amplitudes = to_complex<Scalar>(pairs.front().vector);
  finish_result(r);
  return r;
}

template GroundStateResult dense_ground(const RealHamiltonian&, int);
template GroundStateResult dense_ground(const ComplexHamiltonian&, int);
template GroundStateResult lanczos_ground(const RealHamiltonian&, const SolverOptions&);
template GroundStateResult lanczos_ground(const ComplexHamiltonian&, const SolverOptions&);

namespace {

template <class Scalar>
GroundStateResult dispatch(const SparseHamiltonian<Scalar>& H, const SolverOptions& opts) {
  SolverMethod m = opts.method;
  if (m == SolverMethod::automatic) {
    m = H.dimension() <= kDenseLimit ? SolverMethod::dense : SolverMethod::lanczos;
  }
  if (m == SolverMethod::dense || H.dimension() < 2) return dense_ground(H, opts.n_low);
  return lanczos_ground(H, opts);
}

}  // namespace

GroundStateResult ground_state(const ModelParams& params, const SectorBasis& basis,
                               Representation rep, const SolverOptions& opts) {
  params.validate();
  if (opts.method == SolverMethod::dense && basis.size() > kDenseLimit) {
    throw std::invalid_argument("dense diagonalization limited to dimension " +
                                std::to_string(kDenseLimit) + ", got " +
                                std::to_string(basis.size()));
  }
  if (rep == Representation::real_space) return dispatch(build_real_hamiltonian(params, basis), opts);
  return dispatch(build_momentum_hamiltonian(params, basis), opts);
}

GroundStateResult ground_state(const ModelParams& params, const Sector& sector, Representation rep,
                               const SolverOptions& opts) {
  return ground_state(params, enumerate_sector(sector), rep, opts);
}

double overlap_magnitude(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap of vectors of different size");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

}  // namespace hubent
