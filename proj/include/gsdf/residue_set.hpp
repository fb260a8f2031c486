#pragma once
// Subsets of Z_v (v odd) with value semantics, plus the small amount of
// multiplicative number theory the rest of the library needs: unit orders,
// modular inverses, unit subgroups and their orbits on Z_v.
//
// Sets are bit-packed, one bit per residue, so intersection and translation
// are word-parallel.  All residue arguments are reduced mod v on entry, so
// callers may pass negative values such as -1 for v-1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsdf {

namespace detail {

inline constexpr int kWordBits = 64;

inline std::size_t words_for(int modulus) {
  return static_cast<std::size_t>((modulus + kWordBits - 1) / kWordBits);
}

// Mask that keeps only the valid bits of the final word.
inline std::uint64_t tail_mask(int modulus) {
  const int used = modulus % kWordBits;
  return used == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << used) - 1);
}

}  // namespace detail

// Reduce an integer into [0, modulus).
inline int normalize_residue(int modulus, long long value) {
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  long long r = value % modulus;
  if (r < 0) r += modulus;
  return static_cast<int>(r);
}

class ResidueSet {
 public:
  explicit ResidueSet(int modulus)
      : modulus_(modulus), bits_(detail::words_for(check_modulus(modulus)), 0) {}

  static ResidueSet of(int modulus, const std::vector<int>& members) {
    ResidueSet s(modulus);
    for (int m : members) s.insert(m);
    return s;
  }

  int modulus() const { return modulus_; }

  int size() const {
    int n = 0;
    for (std::uint64_t w : bits_) n += std::popcount(w);
    return n;
  }

  bool empty() const {
    return std::all_of(bits_.begin(), bits_.end(),
                       [](std::uint64_t w) { return w == 0; });
  }

  bool contains(long long residue) const {
    const int r = normalize_residue(modulus_, residue);
    return (bits_[r / detail::kWordBits] >> (r % detail::kWordBits)) & 1u;
  }

  void insert(long long residue) {
    const int r = normalize_residue(modulus_, residue);
    bits_[r / detail::kWordBits] |= std::uint64_t{1} << (r % detail::kWordBits);
  }

  void erase(long long residue) {
    const int r = normalize_residue(modulus_, residue);
    bits_[r / detail::kWordBits] &= ~(std::uint64_t{1} << (r % detail::kWordBits));
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        out.push_back(static_cast<int>(w) * detail::kWordBits + bit);
        word &= word - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return bits_; }

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.modulus_ == b.modulus_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const ResidueSet& a, const ResidueSet& b) {
    return !(a == b);
  }

  // Lexicographic order on (modulus, member list); used to canonicalize
  // search output.
  friend bool operator<(const ResidueSet& a, const ResidueSet& b) {
    if (a.modulus_ != b.modulus_) return a.modulus_ < b.modulus_;
    return a.members() < b.members();
  }

  friend ResidueSet translate(const ResidueSet& x, long long delta);

  friend ResidueSet operator&(const ResidueSet& a, const ResidueSet& b) {
    ResidueSet out = a.check_same_modulus(b);
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= b.bits_[i];
    return out;
  }

  friend ResidueSet operator|(const ResidueSet& a, const ResidueSet& b) {
    ResidueSet out = a.check_same_modulus(b);
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
    return out;
  }

 private:
  static int check_modulus(int modulus) {
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    if (modulus % 2 == 0) throw std::invalid_argument("modulus must be odd");
    return modulus;
  }

  ResidueSet check_same_modulus(const ResidueSet& other) const {
    if (modulus_ != other.modulus_)
      throw std::invalid_argument("modulus mismatch between residue sets");
    return *this;
  }

  int modulus_;
  std::vector<std::uint64_t> bits_;
};

// { v - x : x in X }.
inline ResidueSet negate(const ResidueSet& x) {
  ResidueSet out(x.modulus());
  for (int m : x.members()) out.insert(-static_cast<long long>(m));
  return out;
}

// Z_v \ X.
inline ResidueSet complement(const ResidueSet& x) {
  ResidueSet out(x.modulus());
  for (int r = 0; r < x.modulus(); ++r)
    if (!x.contains(r)) out.insert(r);
  return out;
}

// X = -X.
inline bool is_symmetric(const ResidueSet& x) { return negate(x) == x; }

// 0 is absent and exactly one of {x, -x} is present for every nonzero x.
// Forces |X| = (v - 1) / 2.
inline bool is_skew(const ResidueSet& x) {
  if (x.contains(0)) return false;
  const int v = x.modulus();
  for (int r = 1; r <= (v - 1) / 2; ++r)
    if (x.contains(r) == x.contains(v - r)) return false;
  return true;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// Multiplicative order of the unit mu in Z_v^*.
inline long long unit_order(int modulus, long long mu) {
  const int m = normalize_residue(modulus, mu);
  if (std::gcd(static_cast<long long>(m), static_cast<long long>(modulus)) != 1)
    throw std::invalid_argument("multiplier not invertible");
  if (modulus == 1) return 1;
  long long order = 1;
  long long acc = m % modulus;
  while (acc != 1) {
    acc = (acc * m) % modulus;
    ++order;
  }
  return order;
}

// Inverse of mu in Z_v^*.
inline int mod_inverse(int modulus, long long mu) {
  const int m = normalize_residue(modulus, mu);
  if (std::gcd(static_cast<long long>(m), static_cast<long long>(modulus)) != 1)
    throw std::invalid_argument("multiplier not invertible");
  // Extended Euclid.
  long long a = m, b = modulus, x0 = 1, x1 = 0;
  while (b != 0) {
    const long long q = a / b;
    std::tie(a, b) = std::tuple{b, a - q * b};
    std::tie(x0, x1) = std::tuple{x1, x0 - q * x1};
  }
  return normalize_residue(modulus, x0);
}

// { mu * x : x in X }.  mu must be a unit so the image has the same size.
inline ResidueSet scale(const ResidueSet& x, long long mu) {
  const int v = x.modulus();
  const int m = normalize_residue(v, mu);
  if (std::gcd(static_cast<long long>(m), static_cast<long long>(v)) != 1)
    throw std::invalid_argument("multiplier not invertible");
  ResidueSet out(v);
  for (int r : x.members())
    out.insert(static_cast<long long>(m) * r);
  return out;
}

// { x + d : x in X }.  Implemented as a rotation of the v-bit string.
inline ResidueSet translate(const ResidueSet& x, long long delta) {
  const int v = x.modulus();
  const int d = normalize_residue(v, delta);
  if (d == 0) return x;
  ResidueSet out(v);
  auto& dst = out.bits_;
  const auto& src = x.bits_;
  const std::size_t nw = src.size();
  // out = ((x << d) | (x >> (v - d))) restricted to v bits.
  const auto shifted_bit_or = [&](int shift_left) {
    // OR (src << shift_left) into dst, dropping bits at positions >= v.
    const int word_off = shift_left / detail::kWordBits;
    const int bit_off = shift_left % detail::kWordBits;
    for (std::size_t i = 0; i < nw; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(word_off);
      if (j < nw) {
        dst[j] |= bit_off == 0 ? src[i] : (src[i] << bit_off);
      }
      if (bit_off != 0 && j + 1 < nw) {
        dst[j + 1] |= src[i] >> (detail::kWordBits - bit_off);
      }
    }
  };
  shifted_bit_or(d);
  // Bits that would overflow position v wrap to the bottom: x >> (v - d).
  const int back = v - d;
  const int word_off = back / detail::kWordBits;
  const int bit_off = back % detail::kWordBits;
  for (std::size_t i = static_cast<std::size_t>(word_off); i < nw; ++i) {
    const std::size_t j = i - static_cast<std::size_t>(word_off);
    std::uint64_t chunk = src[i] >> bit_off;
    if (bit_off != 0 && i + 1 < nw)
      chunk |= src[i + 1] << (detail::kWordBits - bit_off);
    dst[j] |= chunk;
  }
  dst[nw - 1] &= detail::tail_mask(v);
  return out;
}

// Number of ordered pairs (x, y) in X * X with x - y = d, i.e. |X ∩ (X + d)|.
inline int shifted_intersection_count(const ResidueSet& x, long long d) {
  const ResidueSet t = translate(x, d);
  const auto& a = x.words();
  const auto& b = t.words();
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

// A subgroup of the unit group Z_v^*, stored as its sorted element list.
struct UnitSubgroup {
  int modulus = 1;
  std::vector<int> elements;  // sorted ascending, always contains 1

  bool contains(int u) const {
    return std::binary_search(elements.begin(), elements.end(), u);
  }
  std::size_t order() const { return elements.size(); }
};

// Closure of the given generators under multiplication mod v.  Every
// generator must be a unit.
inline UnitSubgroup subgroup_closure(int modulus, const std::vector<int>& generators) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<char> seen(static_cast<std::size_t>(modulus), 0);
  std::vector<int> frontier;
  const int one = normalize_residue(modulus, 1);
  seen[static_cast<std::size_t>(one)] = 1;
  frontier.push_back(one);
  std::vector<int> gens;
  for (int g : generators) {
    const int gn = normalize_residue(modulus, g);
    if (std::gcd(static_cast<long long>(gn), static_cast<long long>(modulus)) != 1)
      throw std::invalid_argument("multiplier not invertible");
    gens.push_back(gn);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const long long cur = frontier[head];
    for (int g : gens) {
      const int nxt = static_cast<int>((cur * g) % modulus);
      if (!seen[static_cast<std::size_t>(nxt)]) {
        seen[static_cast<std::size_t>(nxt)] = 1;
        frontier.push_back(nxt);
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  return UnitSubgroup{modulus, std::move(frontier)};
}

// Orbits of H acting on Z_v by multiplication, as sorted lists, ordered by
// their minimum element.  The orbit of 0 is always {0} and comes first.
inline std::vector<std::vector<int>> orbits(const UnitSubgroup& h) {
  const int v = h.modulus;
  std::vector<char> seen(static_cast<std::size_t>(v), 0);
  std::vector<std::vector<int>> out;
  for (int r = 0; r < v; ++r) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    std::vector<int> orbit;
    for (int u : h.elements) {
      const int img = static_cast<int>((static_cast<long long>(u) * r) % v);
      if (!seen[static_cast<std::size_t>(img)]) {
        seen[static_cast<std::size_t>(img)] = 1;
        orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

// Union of the H-orbits of the given representatives.  Representatives from
// the same orbit are tolerated (the orbit is included once).
inline ResidueSet expand_orbits(const UnitSubgroup& h, const std::vector<int>& reps) {
  ResidueSet out(h.modulus);
  for (int rep : reps) {
    const int r = normalize_residue(h.modulus, rep);
    for (int u : h.elements)
      out.insert(static_cast<long long>(u) * r);
  }
  return out;
}

// Minimum-element representatives of the orbits composing X.  Throws if X is
// not a union of H-orbits.
inline std::vector<int> orbit_representatives(const UnitSubgroup& h, const ResidueSet& x) {
  if (h.modulus != x.modulus())
    throw std::invalid_argument("modulus mismatch between subgroup and residue set");
  std::vector<int> reps;
  ResidueSet covered(x.modulus());
  for (int m : x.members()) {
    if (covered.contains(m)) continue;
    reps.push_back(m);
    for (int u : h.elements) {
      const long long img = static_cast<long long>(u) * m;
      if (!x.contains(img))
        throw std::invalid_argument("set is not a union of orbits of the group");
      covered.insert(img);
    }
  }
  return reps;
}

}  // namespace gsdf
