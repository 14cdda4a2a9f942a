#include "hubent/analytic_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hubent/model_momentum.hpp"

namespace hubent {

std::string_view to_string(ReferenceLabel label) {
  switch (label) {
    case ReferenceLabel::ps_a: return "PS(a)";
    case ReferenceLabel::ps_b: return "PS(b)";
    case ReferenceLabel::ps_c: return "PS(c)";
    case ReferenceLabel::ps_d: return "PS(d)";
    case ReferenceLabel::cdw: return "CDW";
  }
  return "?";
}

ReferenceLabel parse_reference_label(std::string_view s) {
  for (auto l : {ReferenceLabel::ps_a, ReferenceLabel::ps_b, ReferenceLabel::ps_c,
                 ReferenceLabel::ps_d, ReferenceLabel::cdw}) {
    if (s == to_string(l)) return l;
  }
  if (s == "psa") return ReferenceLabel::ps_a;
  if (s == "psb") return ReferenceLabel::ps_b;
  if (s == "psc") return ReferenceLabel::ps_c;
  if (s == "psd") return ReferenceLabel::ps_d;
  if (s == "cdw") return ReferenceLabel::cdw;
  throw std::invalid_argument("unknown reference label '" + std::string(s) + "'");
}

std::string reference_pattern(ReferenceLabel label, int L) {
  if (L % 2 != 0 || L < 2 || L > kMaxSites) throw std::invalid_argument("reference states need even L");
  if (label != ReferenceLabel::cdw && L < 6) {
    throw std::invalid_argument("phase-separated reference states need L >= 6");
  }
  const auto half = static_cast<std::size_t>(L / 2);
  switch (label) {
    case ReferenceLabel::ps_a: return std::string(half, 'D') + std::string(half, '0');
    case ReferenceLabel::ps_b: return std::string(half - 1, 'D') + "ud" + std::string(half - 1, '0');
    case ReferenceLabel::ps_c: return std::string(half - 1, 'D') + "0D" + std::string(half - 2, '0');
    case ReferenceLabel::ps_d: return "d" + std::string(half - 1, 'D') + "u" + std::string(half - 1, '0');
    case ReferenceLabel::cdw: {
      std::string s;
      for (std::size_t i = 0; i < half; ++i) s += "D0";
      return s;
    }
  }
  throw std::invalid_argument("unknown reference label");
}

FockConfig translate_sites(FockConfig c, int L, int shift) {
  FockConfig out;
  for (int j = 0; j < L; ++j) {
    const int to = ((j + shift) % L + L) % L;
    for (Spin s : {Spin::up, Spin::down}) {
      if (c.occupied(mode_index(j, s))) out.bits |= Word{1} << mode_index(to, s);
    }
  }
  return out;
}

ReferenceState reference_state(ReferenceLabel label, const SectorBasis& basis) {
  const int L = basis.sector().L;
  if (basis.sector() != Sector::half_filled(L)) {
    throw std::invalid_argument("reference states live in the half-filled sector");
  }
  const FockConfig seed = config_from_sites(reference_pattern(label, L));
  ReferenceState st;
  st.label = label;
  st.L = L;
  for (int s = 0; s < L; ++s) st.configs.push_back(translate_sites(seed, L, s));
  std::sort(st.configs.begin(), st.configs.end());
  st.configs.erase(std::unique(st.configs.begin(), st.configs.end()), st.configs.end());

  st.amplitudes.assign(basis.size(), Complex{});
  const double amp = 1.0 / std::sqrt(static_cast<double>(st.configs.size()));
  for (FockConfig c : st.configs) {
    const auto idx = basis.index_of(c);
    if (!idx) throw std::logic_error("reference configuration outside the sector");
    st.amplitudes[*idx] = amp;
  }
  return st;
}

ReferenceState reference_state(ReferenceLabel label, int L) {
  Sector sec = Sector::half_filled(L);
  if (L < kMinSites) throw std::invalid_argument("reference states need L >= 4");
  return reference_state(label, SectorBasis(sec));
}

std::string classify_config(FockConfig c, int L) {
  const std::string s = site_string(c, L);
  auto flip = [](std::string x) {
    for (char& ch : x) ch = ch == 'u' ? 'd' : ch == 'd' ? 'u' : ch;
    return x;
  };
  auto matches = [&](const std::string& pattern) {
    for (const std::string& p : {pattern, flip(pattern)}) {
      for (const std::string& q : {p, std::string(p.rbegin(), p.rend())}) {
        for (int r = 0; r < L; ++r) {
          bool same = true;
          for (int j = 0; j < L && same; ++j) {
            same = s[static_cast<std::size_t>(j)] == q[static_cast<std::size_t>((j + r) % L)];
          }
          if (same) return true;
        }
      }
    }
    return false;
  };
  std::vector<ReferenceLabel> labels{ReferenceLabel::cdw};
  if (L >= 6) {
    labels = {ReferenceLabel::ps_a, ReferenceLabel::ps_b, ReferenceLabel::ps_c, ReferenceLabel::ps_d,
              ReferenceLabel::cdw};
  }
  for (ReferenceLabel l : labels) {
    if (matches(reference_pattern(l, L))) return std::string(to_string(l));
  }
  std::string neel;
  for (int j = 0; j < L / 2; ++j) neel += "ud";
  if (matches(neel)) return "SDW";
  return "other";
}

int ps_rank(int l) {
  if (l < 1) throw std::invalid_argument("block size must be >= 1");
  return (l * l + l + 2) / 2;
}

double psd_local_entropy(int L) {
  if (L < 6 || L % 2 != 0) throw std::invalid_argument("PS(d) formula needs even L >= 6");
  const double x = static_cast<double>(L);
  return (2.0 / x) * std::log2(x) - (1.0 - 2.0 / x) * std::log2(0.5 - 1.0 / x);
}

PsEnergies perturbation_energies(double U, double V, double t) {
  if (V == 0.0) throw std::invalid_argument("perturbative energies need V != 0");
  return {5.0 * U + 16.0 * V + 4.0 * t * t / V, 4.0 * U + 16.0 * V + 1.5 * t * t / V};
}

double ps_crossover_U(double V, double t) {
  if (V == 0.0) throw std::invalid_argument("crossover needs V != 0");
  return -2.5 * t * t / V;
}

double free_fermion_ground_energy(int L, Boundary bc, int n_up, int n_dn, double t) {
  const MomentumGrid grid = allowed_momenta(L, bc);
  std::vector<double> eps;
  for (double k : grid.momenta) eps.push_back(-2.0 * t * std::cos(k));
  std::sort(eps.begin(), eps.end());
  double e = 0.0;
  for (int n : {n_up, n_dn}) {
    if (n < 0 || n > L) throw std::invalid_argument("particle count out of range");
    if (n > 0 && n < L && std::abs(eps[static_cast<std::size_t>(n - 1)] - eps[static_cast<std::size_t>(n)]) < 1e-12) {
      throw std::invalid_argument("degenerate Fermi level: the filled sea is ambiguous");
    }
    for (int i = 0; i < n; ++i) e += eps[static_cast<std::size_t>(i)];
  }
  return e;
}

}  // namespace hubent
