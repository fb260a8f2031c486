#pragma once
// Four-block difference families over Z_v and their structure theory:
// parameter sanity checks, the defining covering property, block
// complementation, periodic autocorrelation, and classification of the
// multiplier action linking the last three blocks.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "residue_set.hpp"

namespace gsdf {

// A candidate family: four subsets of the same odd cyclic group.
struct DifferenceFamily {
  std::array<ResidueSet, 4> blocks;

  explicit DifferenceFamily(int v)
      : blocks{ResidueSet(v), ResidueSet(v), ResidueSet(v), ResidueSet(v)} {}

  DifferenceFamily(ResidueSet x0, ResidueSet x1, ResidueSet x2, ResidueSet x3)
      : blocks{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {
    for (int i = 1; i < 4; ++i)
      if (blocks[static_cast<std::size_t>(i)].modulus() != blocks[0].modulus())
        throw std::invalid_argument("all blocks must share one modulus");
  }

  int v() const { return blocks[0].modulus(); }
  const ResidueSet& operator[](std::size_t i) const { return blocks[i]; }
  ResidueSet& operator[](std::size_t i) { return blocks[i]; }

  std::array<int, 4> block_sizes() const {
    return {blocks[0].size(), blocks[1].size(), blocks[2].size(), blocks[3].size()};
  }

  friend bool operator==(const DifferenceFamily& a, const DifferenceFamily& b) {
    return a.blocks == b.blocks;
  }
  friend bool operator!=(const DifferenceFamily& a, const DifferenceFamily& b) {
    return !(a == b);
  }
};

// The numeric signature (v; k0, k1, k2, k3; lambda) of a family.
struct ParameterSet {
  int v = 1;
  std::array<int, 4> k{0, 0, 0, 0};
  long long lambda = 0;

  // weight = sum k_i - lambda; families usable for matrix assembly have
  // weight equal to v.
  long long weight() const {
    return static_cast<long long>(k[0]) + k[1] + k[2] + k[3] - lambda;
  }
  // Side length of the assembled matrix.
  long long matrix_order() const { return 4LL * v; }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

struct ParameterReport {
  bool well_formed = false;   // basic ranges plus the counting identity
  bool gs_type = false;       // well_formed and weight == v
  bool special = false;       // k1 == k2 == k3
  // For special sets: whether 1 + 2(k0 + 3k) - 3(k0 - k)^2 is a perfect
  // square, a known necessary condition for certain constructions.
  // Absent when the set is not special.
  std::optional<bool> square_condition = std::nullopt;
  std::optional<long long> square_value = std::nullopt;
  // Whether Z_v^* contains an element of order 3 (so three-cycles of
  // blocks by a cube-root multiplier are possible at all).
  bool spin_capable = false;
};

inline bool is_perfect_square(long long n) {
  if (n < 0) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

inline ParameterReport check_parameters(const ParameterSet& p) {
  ParameterReport rep;
  bool ok = p.v >= 1 && p.v % 2 == 1 && p.lambda >= 0;
  long long pair_sum = 0;
  for (int ki : p.k) {
    if (ki < 0 || ki > p.v) ok = false;
    pair_sum += static_cast<long long>(ki) * (ki - 1);
  }
  // Every nonzero difference must be covered exactly lambda times.
  if (ok && pair_sum != p.lambda * (p.v - 1)) ok = false;
  rep.well_formed = ok;
  rep.gs_type = ok && p.weight() == p.v;
  rep.special = p.k[1] == p.k[2] && p.k[2] == p.k[3];
  if (rep.special) {
    const long long k0 = p.k[0], k = p.k[1];
    const long long value = 1 + 2 * (k0 + 3 * k) - 3 * (k0 - k) * (k0 - k);
    rep.square_value = value;
    rep.square_condition = is_perfect_square(value);
  }
  // Z_v^* has an element of order 3 iff some u != 1 satisfies u^3 = 1.
  for (int u = 2; u < p.v; ++u) {
    if (std::gcd(u, p.v) != 1) continue;
    const long long u2 = static_cast<long long>(u) * u % p.v;
    if (u2 * u % p.v == 1) {
      rep.spin_capable = true;
      break;
    }
  }
  return rep;
}

// c[d] = number of ordered pairs (x, y), x != y, over all blocks with
// x - y = d.  c[0] is defined as 0.
inline std::vector<long long> difference_counts(const DifferenceFamily& f) {
  const int v = f.v();
  std::vector<long long> counts(static_cast<std::size_t>(v), 0);
  for (const ResidueSet& block : f.blocks)
    for (int d = 1; d < v; ++d)
      counts[static_cast<std::size_t>(d)] += shifted_intersection_count(block, d);
  return counts;
}

struct VerifyResult {
  bool valid = false;
  // Present when valid: the parameters the family actually realizes.
  std::optional<ParameterSet> parameters = std::nullopt;
  std::vector<long long> counts;  // the per-difference totals that were tested
};

// A family is valid when every nonzero difference is covered the same
// number of times.
inline VerifyResult verify(const DifferenceFamily& f) {
  VerifyResult out;
  out.counts = difference_counts(f);
  const int v = f.v();
  bool flat = true;
  for (int d = 2; d < v; ++d)
    if (out.counts[static_cast<std::size_t>(d)] != out.counts[1]) {
      flat = false;
      break;
    }
  out.valid = flat;
  if (flat) {
    ParameterSet p;
    p.v = v;
    p.k = f.block_sizes();
    p.lambda = v > 1 ? out.counts[1] : 0;
    out.parameters = p;
  }
  return out;
}

// Replace block i by its set complement.  The result is again a valid
// family; each nonzero difference gains v - 2 k_i occurrences.
inline DifferenceFamily complement_block(const DifferenceFamily& f, std::size_t i) {
  if (i >= 4) throw std::invalid_argument("block index out of range");
  DifferenceFamily out = f;
  out.blocks[i] = complement(f.blocks[i]);
  return out;
}

// Periodic autocorrelation of the +-1 indicator sequence of X at shift s:
// sum_j a_j a_{j+s} with a_j = -1 iff j in X.
inline long long paf(const ResidueSet& x, long long s) {
  const int v = x.modulus();
  const int k = x.size();
  return static_cast<long long>(v) - 4LL * k +
         4LL * shifted_intersection_count(x, s);
}

// --- multiplier structure ---------------------------------------------------

enum class StructureKind { spin, slide, none };

inline std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::spin: return "spin";
    case StructureKind::slide: return "slide";
    default: return "none";
  }
}

inline char symmetry_char(const ResidueSet& x) {
  if (is_symmetric(x)) return 's';
  if (is_skew(x)) return 'k';
  return '*';
}

struct StructureReport {
  StructureKind kind = StructureKind::none;
  int mu = 1;
  long long mu_order = 1;
  bool fixes_x0 = false;
  // One character for X0 and one for X1: 's' symmetric, 'k' skew,
  // '*' neither.  X2 and X3 share X1's character because they are unit
  // multiples of it whenever kind != none.
  std::string symmetry_symbol = "**";
  bool williamson = false;  // all four blocks symmetric
  bool good = false;        // X0 skew, X1..X3 symmetric
  bool best = false;        // X0 symmetric, X1..X3 skew

  std::vector<std::string> named_classes() const {
    std::vector<std::string> out;
    if (williamson) out.push_back("Williamson");
    if (good) out.push_back("good");
    if (best) out.push_back("best");
    return out;
  }
};

// How the multiplier mu moves the last three blocks: "spin" if it cycles
// X1 -> X2 -> X3 -> X1, "slide" if it chains X1 -> X2 -> X3 but does not
// close up, "none" otherwise.  mu = 1 is never reported as spin or slide.
inline StructureReport classify(const DifferenceFamily& f, long long mu) {
  const int v = f.v();
  const int m = normalize_residue(v, mu);
  if (std::gcd(static_cast<long long>(m), static_cast<long long>(v)) != 1)
    throw std::invalid_argument("multiplier not invertible");
  StructureReport rep;
  rep.mu = m;
  rep.mu_order = unit_order(v, m);
  if (m != 1 && scale(f[1], m) == f[2] && scale(f[2], m) == f[3]) {
    rep.kind = scale(f[3], m) == f[1] ? StructureKind::spin : StructureKind::slide;
  } else {
    rep.kind = StructureKind::none;
  }
  rep.fixes_x0 = scale(f[0], m) == f[0];
  rep.symmetry_symbol = {symmetry_char(f[0]), symmetry_char(f[1])};
  const bool s0 = is_symmetric(f[0]), k0 = is_skew(f[0]);
  const bool s123 = is_symmetric(f[1]) && is_symmetric(f[2]) && is_symmetric(f[3]);
  const bool k123 = is_skew(f[1]) && is_skew(f[2]) && is_skew(f[3]);
  rep.williamson = s0 && s123;
  rep.good = k0 && s123;
  rep.best = s0 && k123;
  return rep;
}

// All multipliers in 2..v-1 that act as spin or slide on f, ascending.
inline std::vector<StructureReport> find_multipliers(const DifferenceFamily& f) {
  std::vector<StructureReport> out;
  const int v = f.v();
  for (int u = 2; u < v; ++u) {
    if (std::gcd(u, v) != 1) continue;
    StructureReport rep = classify(f, u);
    if (rep.kind != StructureKind::none) out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace gsdf
