#include "hubent/fock_basis.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace hubent {

int FockConfig::count() const noexcept { return std::popcount(bits); }

FockConfig config_from_modes(std::span<const int> modes) {
  FockConfig c;
  for (int m : modes) {
    if (m < 0 || m >= 32) throw std::invalid_argument("mode index out of range");
    c.bits |= Word{1} << m;
  }
  return c;
}

FockConfig config_from_sites(const std::string& pattern) {
  FockConfig c;
  int site = 0;
  for (char ch : pattern) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (site >= kMaxSites) throw std::invalid_argument("site pattern too long");
    switch (ch) {
      case '0': break;
      case 'u': c.bits |= Word{1} << mode_index(site, Spin::up); break;
      case 'd': c.bits |= Word{1} << mode_index(site, Spin::down); break;
      case 'D':
        c.bits |= Word{1} << mode_index(site, Spin::up);
        c.bits |= Word{1} << mode_index(site, Spin::down);
        break;
      default:
        throw std::invalid_argument(std::string("bad site character '") + ch + "'");
    }
    ++site;
  }
  return c;
}

std::string site_string(FockConfig c, int n_sites) {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    const bool up = c.occupied(mode_index(j, Spin::up));
    const bool dn = c.occupied(mode_index(j, Spin::down));
    s.push_back(up ? (dn ? 'D' : 'u') : (dn ? 'd' : '0'));
  }
  return s;
}

void Sector::validate() const {
  if (L % 2 != 0) throw std::invalid_argument("L must be even, got " + std::to_string(L));
  if (L < kMinSites || L > kMaxSites) {
    throw std::invalid_argument("L must lie in [4, 14], got " + std::to_string(L));
  }
  if (n_up < 0 || n_up > L || n_dn < 0 || n_dn > L) {
    throw std::invalid_argument("particle counts out of range for L=" + std::to_string(L));
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

namespace {

// Gosper's hack: next larger word with the same popcount.
Word next_combination(Word x) {
  const Word low = x & (~x + 1);
  const Word ripple = x + low;
  return ripple | (((x ^ ripple) >> 2) / low);
}

// Scatters the low `count` bits of `compact` onto the modes of one spin.
Word spread(Word compact, Spin s) {
  Word out = 0;
  for (int j = 0; compact != 0; ++j, compact >>= 1) {
    if (compact & 1U) out |= Word{1} << mode_index(j, s);
  }
  return out;
}

std::vector<Word> combinations(int n, int k) {
  std::vector<Word> out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const Word limit = Word{1} << n;
  for (Word x = (Word{1} << k) - 1; x < limit; x = next_combination(x)) {
    out.push_back(x);
  }
  return out;
}

}  // namespace

SectorBasis::SectorBasis(const Sector& sector) : sector_(sector) {
  if (sector_.L < 2 || sector_.L % 2 != 0 || sector_.L > kMaxSites || sector_.n_up < 0 ||
      sector_.n_dn < 0 || sector_.n_up > sector_.L || sector_.n_dn > sector_.L) {
    throw std::invalid_argument("invalid sector");
  }
  const auto ups = combinations(sector_.L, sector_.n_up);
  const auto dns = combinations(sector_.L, sector_.n_dn);
  configs_.reserve(ups.size() * dns.size());
  for (Word u : ups) {
    const Word ub = spread(u, Spin::up);
    for (Word d : dns) configs_.push_back(FockConfig{ub | spread(d, Spin::down)});
  }
  std::sort(configs_.begin(), configs_.end());
}

std::optional<std::size_t> SectorBasis::index_of(FockConfig c) const {
  const auto it = std::lower_bound(configs_.begin(), configs_.end(), c);
  if (it == configs_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - configs_.begin());
}

SectorBasis enumerate_sector(const Sector& sector) {
  sector.validate();
  return SectorBasis(sector);
}

std::optional<SignedConfig> apply_mode_op(FockConfig c, int mode, ModeOp op) {
  const Word bit = Word{1} << mode;
  const bool occ = (c.bits & bit) != 0;
  if ((op == ModeOp::create) == occ) return std::nullopt;
  const int below = std::popcount(c.bits & (bit - 1));
  return SignedConfig{FockConfig{c.bits ^ bit}, (below & 1) ? -1 : 1};
}

BlockSpec BlockSpec::contiguous_sites(int L, int l, int first) {
  if (l < 1 || l > L) throw std::invalid_argument("block size must lie in [1, L]");
  BlockSpec b;
  b.total_modes = 2 * L;
  b.kind = BlockKind::contiguous_sites;
  for (int i = 0; i < l; ++i) {
    const int site = (first + i) % L;
    b.modes.push_back(mode_index(site, Spin::up));
    b.modes.push_back(mode_index(site, Spin::down));
  }
  std::sort(b.modes.begin(), b.modes.end());
  return b;
}

BlockSpec BlockSpec::momentum_pair(int L, int n1, int n2) {
  if (n1 < 0 || n1 >= L || n2 < 0 || n2 >= L || n1 == n2) {
    throw std::invalid_argument("momentum pair indices must be distinct and in [0, L)");
  }
  BlockSpec b = explicit_modes(2 * L, {mode_index(n1, Spin::up), mode_index(n2, Spin::up),
                                       mode_index(n1, Spin::down), mode_index(n2, Spin::down)});
  b.kind = BlockKind::momentum_pair;
  return b;
}

BlockSpec BlockSpec::explicit_modes(int total_modes, std::vector<int> modes) {
  if (total_modes <= 0 || total_modes > 32) throw std::invalid_argument("bad mode count");
  std::sort(modes.begin(), modes.end());
  if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
    throw std::invalid_argument("block modes must be distinct");
  }
  for (int m : modes) {
    if (m < 0 || m >= total_modes) throw std::invalid_argument("block mode out of range");
  }
  BlockSpec b;
  b.modes = std::move(modes);
  b.total_modes = total_modes;
  b.kind = BlockKind::explicit_modes;
  return b;
}

BlockSpec BlockSpec::complement() const {
  std::vector<int> rest;
  const Word m = mask();
  for (int i = 0; i < total_modes; ++i) {
    if (!((m >> i) & 1U)) rest.push_back(i);
  }
  return explicit_modes(total_modes, std::move(rest));
}

Word BlockSpec::mask() const noexcept {
  Word m = 0;
  for (int i : modes) m |= Word{1} << i;
  return m;
}

SplitConfig split_config(FockConfig c, const BlockSpec& block) {
  SplitConfig out;
  const Word bmask = block.mask();
  int env_seen = 0;
  int inversions = 0;
  int bi = 0;
  int ei = 0;
  for (int m = 0; m < block.total_modes; ++m) {
    const bool occ = c.occupied(m);
    if ((bmask >> m) & 1U) {
      if (occ) {
        out.block.bits |= Word{1} << bi;
        inversions += env_seen;
      }
      ++bi;
    } else {
      if (occ) {
        out.env.bits |= Word{1} << ei;
        ++env_seen;
      }
      ++ei;
    }
  }
  out.sign = (inversions & 1) ? -1 : 1;
  return out;
}

BlockQuantumNumbers block_quantum_numbers(FockConfig block_config, const BlockSpec& block) {
  BlockQuantumNumbers q;
  for (int i = 0; i < block.size(); ++i) {
    if (!block_config.occupied(i)) continue;
    ++q.n;
    q.twice_sz += mode_spin(block.modes[static_cast<std::size_t>(i)]) == Spin::up ? 1 : -1;
  }
  return q;
}

}  // namespace hubent
