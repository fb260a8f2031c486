#pragma once
// Plus/minus matrices, circulant building blocks, the 4x4 block template
// that turns a weight-v four-block family into a square matrix of order 4v,
// and the orthogonality / skewness predicates for the result.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "family.hpp"
#include "residue_set.hpp"

namespace gsdf {

// Dense square matrix with entries +1 / -1, bit-packed row-major
// (bit set = -1).
class PMMatrix {
 public:
  explicit PMMatrix(int order)
      : n_(checked_order(order)),
        words_per_row_(detail::words_for(order)),
        bits_(static_cast<std::size_t>(order) * words_per_row_, 0) {}

  int order() const { return n_; }

  bool minus_at(int r, int c) const {
    return (row(r)[static_cast<std::size_t>(c) / detail::kWordBits] >>
            (static_cast<std::size_t>(c) % detail::kWordBits)) & 1u;
  }

  int sign(int r, int c) const { return minus_at(r, c) ? -1 : +1; }

  void set_minus(int r, int c, bool value) {
    std::uint64_t& w =
        row_mut(r)[static_cast<std::size_t>(c) / detail::kWordBits];
    const std::uint64_t bit = std::uint64_t{1}
                              << (static_cast<std::size_t>(c) % detail::kWordBits);
    if (value)
      w |= bit;
    else
      w &= ~bit;
  }

  const std::uint64_t* row(int r) const {
    return bits_.data() + static_cast<std::size_t>(r) * words_per_row_;
  }

  std::size_t words_per_row() const { return words_per_row_; }

  friend bool operator==(const PMMatrix& a, const PMMatrix& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const PMMatrix& a, const PMMatrix& b) {
    return !(a == b);
  }

 private:
  static int checked_order(int order) {
    if (order < 1) throw std::invalid_argument("matrix order must be positive");
    return order;
  }

  std::uint64_t* row_mut(int r) {
    return bits_.data() + static_cast<std::size_t>(r) * words_per_row_;
  }

  int n_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

// First row of the +-1 indicator of X: entry j is -1 iff j is in X.
inline std::vector<int> pm_row(const ResidueSet& x) {
  std::vector<int> out(static_cast<std::size_t>(x.modulus()), +1);
  for (int m : x.members()) out[static_cast<std::size_t>(m)] = -1;
  return out;
}

// Circulant matrix over Z_v: entry (r, c) = a[(c - r) mod v] where a is the
// +-1 indicator of X.
inline PMMatrix circulant(const ResidueSet& x) {
  const int v = x.modulus();
  PMMatrix m(v);
  for (int r = 0; r < v; ++r)
    for (int c = 0; c < v; ++c)
      m.set_minus(r, c, x.contains(c - r));
  return m;
}

// The back-diagonal permutation matrix R over Z_v as 0/1 positions:
// R[i][j] = 1 iff i + j = 0 (mod v).  Exposed for tests; the assembly
// below folds R in algebraically.
inline std::vector<std::vector<int>> back_identity(int v) {
  std::vector<std::vector<int>> r(static_cast<std::size_t>(v),
                                  std::vector<int>(static_cast<std::size_t>(v), 0));
  for (int i = 0; i < v; ++i)
    r[static_cast<std::size_t>(i)][static_cast<std::size_t>(normalize_residue(v, -i))] = 1;
  return r;
}

// Assemble the order-4v matrix from a four-block family.  With A_i the
// circulant of block i and R the back-diagonal identity, the block rows are
//
//   [  A0    A1R    A2R    A3R ]
//   [ -A1R   A0    -RA3    RA2 ]
//   [ -A2R   RA3    A0    -RA1 ]
//   [ -A3R  -RA2    RA1    A0  ]
//
// Entry formulas inside a v x v block at local position (r, c):
//   A_i:    a_i[(c - r) mod v]
//   A_i R:  a_i[(-(r + c)) mod v]
//   R A_i:  a_i[(r + c) mod v]
inline PMMatrix assemble_gs(const DifferenceFamily& f) {
  const int v = f.v();
  PMMatrix m(4 * v);
  enum Shape { kCirc, kCircR, kRCirc };
  struct Cell { Shape shape; int block; bool negate; };
  static constexpr Cell kLayout[4][4] = {
      {{kCirc, 0, false}, {kCircR, 1, false}, {kCircR, 2, false}, {kCircR, 3, false}},
      {{kCircR, 1, true}, {kCirc, 0, false}, {kRCirc, 3, true}, {kRCirc, 2, false}},
      {{kCircR, 2, true}, {kRCirc, 3, false}, {kCirc, 0, false}, {kRCirc, 1, true}},
      {{kCircR, 3, true}, {kRCirc, 2, true}, {kRCirc, 1, false}, {kCirc, 0, false}}};
  for (int bt = 0; bt < 4; ++bt) {
    for (int bu = 0; bu < 4; ++bu) {
      const Cell cell = kLayout[bt][bu];
      const ResidueSet& x = f[static_cast<std::size_t>(cell.block)];
      for (int r = 0; r < v; ++r) {
        for (int c = 0; c < v; ++c) {
          long long idx = 0;
          switch (cell.shape) {
            case kCirc: idx = c - r; break;
            case kCircR: idx = -(r + c); break;
            case kRCirc: idx = r + c; break;
          }
          const bool minus = x.contains(idx) != cell.negate;
          m.set_minus(bt * v + r, bu * v + c, minus);
        }
      }
    }
  }
  return m;
}

// Rows pairwise orthogonal: the +-1 dot product of rows i and j is
// n - 2 * popcount(xor), so orthogonality means the xor popcount is n / 2.
inline bool is_hadamard(const PMMatrix& m) {
  const int n = m.order();
  const std::size_t w = m.words_per_row();
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* ri = m.row(i);
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t* rj = m.row(j);
      int diff = 0;
      for (std::size_t t = 0; t < w; ++t) diff += std::popcount(ri[t] ^ rj[t]);
      if (2 * diff != n) return false;
    }
  }
  return true;
}

// M + M^T = 2I: diagonal +1 and exactly one of (i,j), (j,i) is -1 off the
// diagonal.
inline bool is_skew_type(const PMMatrix& m) {
  const int n = m.order();
  for (int i = 0; i < n; ++i) {
    if (m.minus_at(i, i)) return false;
    for (int j = i + 1; j < n; ++j)
      if (m.minus_at(i, j) == m.minus_at(j, i)) return false;
  }
  return true;
}

// Text form: a header line "order N" followed by N lines of N characters
// '+' or '-'.
inline void write_matrix(const PMMatrix& m, std::ostream& os) {
  os << "order " << m.order() << '\n';
  for (int r = 0; r < m.order(); ++r) {
    for (int c = 0; c < m.order(); ++c) os << (m.minus_at(r, c) ? '-' : '+');
    os << '\n';
  }
}

inline std::string matrix_to_text(const PMMatrix& m) {
  std::ostringstream os;
  write_matrix(m, os);
  return os.str();
}

inline PMMatrix read_matrix(std::istream& is) {
  std::string word;
  long long n = 0;
  if (!(is >> word) || word != "order" || !(is >> n) || n < 1)
    throw std::invalid_argument("matrix text must start with 'order N'");
  PMMatrix m(static_cast<int>(n));
  std::string line;
  std::getline(is, line);  // consume rest of header line
  for (int r = 0; r < n; ++r) {
    if (!std::getline(is, line) || static_cast<long long>(line.size()) != n)
      throw std::invalid_argument("matrix row " + std::to_string(r) +
                                  " has the wrong length");
    for (int c = 0; c < n; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch != '+' && ch != '-')
        throw std::invalid_argument("matrix entries must be '+' or '-'");
      m.set_minus(r, c, ch == '-');
    }
  }
  return m;
}

inline PMMatrix matrix_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace gsdf
