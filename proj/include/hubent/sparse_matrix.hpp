#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hubent {

using Complex = std::complex<double>;

template <class Scalar>
inline constexpr bool is_complex_v = !std::is_floating_point_v<Scalar>;

[[nodiscard]] inline double conj_of(double x) { return x; }
[[nodiscard]] inline Complex conj_of(Complex x) { return std::conj(x); }

/// Row-grouped (CSR) sparse Hermitian operator over a sector basis.
/// Rows are sorted by column and duplicate entries are merged, so the
/// summation order of every matrix-vector product row is fixed.
template <class Scalar>
class SparseHamiltonian {
 public:
  using scalar_type = Scalar;

  SparseHamiltonian() = default;
  explicit SparseHamiltonian(std::size_t dim) : dim_(dim) { row_ptr_.reserve(dim + 1); row_ptr_.push_back(0); }

  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return cols_.size(); }
  [[nodiscard]] std::span<const std::uint64_t> row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] std::span<const std::uint32_t> cols() const noexcept { return cols_; }
  [[nodiscard]] std::span<const Scalar> values() const noexcept { return values_; }

  /// Appends the next row. `entries` may be unsorted and contain repeated
  /// columns; exact zeros after merging are dropped.
  void push_row(std::vector<std::pair<std::uint32_t, Scalar>>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t i = 0;
    while (i < entries.size()) {
      const std::uint32_t c = entries[i].first;
      Scalar acc{};
      for (; i < entries.size() && entries[i].first == c; ++i) acc += entries[i].second;
      if (acc != Scalar{}) {
        cols_.push_back(c);
        values_.push_back(acc);
      }
    }
    row_ptr_.push_back(cols_.size());
  }

  /// Marks construction complete; throws if the row count is wrong.
  void finish() {
    if (row_ptr_.size() != dim_ + 1) throw std::logic_error("SparseHamiltonian: row count mismatch");
  }

  /// y = H x.
  void multiply(std::span<const Scalar> x, std::span<Scalar> y) const {
    assert(x.size() == dim_ && y.size() == dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      Scalar acc{};
      for (std::uint64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
      y[r] = acc;
    }
  }

  [[nodiscard]] Scalar element(std::size_t r, std::size_t c) const {
    const auto* first = cols_.data() + row_ptr_[r];
    const auto* last = cols_.data() + row_ptr_[r + 1];
    const auto* it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
    if (it == last || *it != c) return Scalar{};
    return values_[static_cast<std::size_t>(it - cols_.data())];
  }

  [[nodiscard]] Scalar diagonal(std::size_t r) const { return element(r, r); }

  /// max |H - H^dagger| over stored entries.
  [[nodiscard]] double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::uint64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        const Scalar mirror = element(cols_[p], r);
        worst = std::max(worst, std::abs(values_[p] - conj_of(mirror)));
      }
    }
    return worst;
  }

  [[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
            static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::uint64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[p])) = values_[p];
      }
    }
    return m;
  }

  [[nodiscard]] std::size_t max_offdiagonal_per_row() const {
    std::size_t worst = 0;
    for (std::size_t r = 0; r < dim_; ++r) {
      std::size_t n = row_ptr_[r + 1] - row_ptr_[r];
      if (element(r, r) != Scalar{}) --n;
      worst = std::max(worst, n);
    }
    return worst;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<Scalar> values_;
};

using RealHamiltonian = SparseHamiltonian<double>;
using ComplexHamiltonian = SparseHamiltonian<Complex>;

}  // namespace hubent
