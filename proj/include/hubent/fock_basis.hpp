#pragma once

// Occupation-number configurations of 2L fermionic modes.
//
// Mode ordering is site-major with spin-up before spin-down:
//   mode(j, up) = 2j, mode(j, down) = 2j + 1.
// The same layout is reused for momentum modes, with the site index
// replaced by the momentum index.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hubent {

using Word = std::uint32_t;

inline constexpr int kMinSites = 4;
inline constexpr int kMaxSites = 14;

enum class Spin : int { up = 0, down = 1 };

[[nodiscard]] constexpr int mode_index(int site, Spin s) noexcept {
  return 2 * site + static_cast<int>(s);
}
[[nodiscard]] constexpr Spin mode_spin(int mode) noexcept {
  return (mode & 1) ? Spin::down : Spin::up;
}
[[nodiscard]] constexpr int mode_site(int mode) noexcept { return mode >> 1; }

/// Bit mask selecting every mode of one spin species among `n_sites` sites.
[[nodiscard]] constexpr Word spin_mask(int n_sites, Spin s) noexcept {
  Word m = 0;
  for (int j = 0; j < n_sites; ++j) m |= Word{1} << mode_index(j, s);
  return m;
}

struct FockConfig {
  Word bits = 0;

  [[nodiscard]] constexpr bool occupied(int mode) const noexcept {
    return (bits >> mode) & 1U;
  }
  [[nodiscard]] int count() const noexcept;

  friend constexpr auto operator<=>(FockConfig, FockConfig) = default;
};

/// Builds a config from the list of occupied modes.
[[nodiscard]] FockConfig config_from_modes(std::span<const int> modes);

/// Parses a site pattern such as "D D u d 0" (whitespace optional):
/// '0' empty, 'u' spin-up, 'd' spin-down, 'D' doubly occupied.
[[nodiscard]] FockConfig config_from_sites(const std::string& pattern);

/// Inverse of config_from_sites for the first `n_sites` sites, no separators.
[[nodiscard]] std::string site_string(FockConfig c, int n_sites);

struct Sector {
  int L = 0;
  int n_up = 0;
  int n_dn = 0;

  /// Throws std::invalid_argument unless L is even, 4 <= L <= 14 and the
  /// particle counts fit.
  void validate() const;
  [[nodiscard]] static Sector half_filled(int L) { return {L, L / 2, L / 2}; }
  [[nodiscard]] int n_modes() const noexcept { return 2 * L; }

  friend constexpr bool operator==(const Sector&, const Sector&) = default;
};

/// All configurations of a (N_up, N_dn) sector in strictly increasing order.
class SectorBasis {
 public:
  /// Accepts any even 2 <= L <= 14; enumerate_sector applies the full
  /// chain-length rules. Two-site bases exist for hand-built test states.
  explicit SectorBasis(const Sector& sector);

  [[nodiscard]] const Sector& sector() const noexcept { return sector_; }
  [[nodiscard]] std::size_t size() const noexcept { return configs_.size(); }
  [[nodiscard]] FockConfig operator[](std::size_t i) const { return configs_[i]; }
  [[nodiscard]] std::span<const FockConfig> configs() const noexcept {
    return configs_;
  }

  /// Ordinal of `c`, or nullopt when it is not in this sector.
  [[nodiscard]] std::optional<std::size_t> index_of(FockConfig c) const;

 private:
  Sector sector_;
  std::vector<FockConfig> configs_;
};

[[nodiscard]] SectorBasis enumerate_sector(const Sector& sector);

[[nodiscard]] std::uint64_t binomial(int n, int k);

enum class ModeOp { create, annihilate };

struct SignedConfig {
  FockConfig config;
  int sign = 1;
};

/// Applies c^dagger_mode or c_mode. Returns nullopt when the result vanishes;
/// the sign is (-1)^(occupied modes with lower index).
[[nodiscard]] std::optional<SignedConfig> apply_mode_op(FockConfig c, int mode,
                                                        ModeOp op);

enum class BlockKind { contiguous_sites, momentum_pair, explicit_modes };

struct BlockSpec {
  std::vector<int> modes;  // sorted, distinct
  int total_modes = 0;
  BlockKind kind = BlockKind::explicit_modes;

  /// Sites [first, first + l) of an L-site chain.
  [[nodiscard]] static BlockSpec contiguous_sites(int L, int l, int first = 0);
  /// Modes {(k, up), (k', up), (k, down), (k', down)} for momentum indices
  /// `n1` and `n2` of an L-point grid.
  [[nodiscard]] static BlockSpec momentum_pair(int L, int n1, int n2);
  [[nodiscard]] static BlockSpec explicit_modes(int total_modes,
                                                std::vector<int> modes);

  /// Every mode not in this block.
  [[nodiscard]] BlockSpec complement() const;
  [[nodiscard]] Word mask() const noexcept;
  [[nodiscard]] int size() const noexcept { return static_cast<int>(modes.size()); }
};

struct SplitConfig {
  FockConfig block;
  FockConfig env;
  int sign = 1;
};

/// Splits `c` into block and environment occupations, each re-indexed from 0
/// in increasing global order. The sign is the parity of moving all occupied
/// block modes in front of the occupied environment modes.
[[nodiscard]] SplitConfig split_config(FockConfig c, const BlockSpec& block);

struct BlockQuantumNumbers {
  int n = 0;         // particle count
  int twice_sz = 0;  // N_up - N_dn

  friend constexpr auto operator<=>(const BlockQuantumNumbers&,
                                    const BlockQuantumNumbers&) = default;
};

[[nodiscard]] BlockQuantumNumbers block_quantum_numbers(FockConfig block_config,
                                                        const BlockSpec& block);

}  // namespace hubent
