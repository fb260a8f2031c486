#pragma once
// Chains of primes under p -> 2p + 1, and the census of how often the
// doubling step immediately fails.
//
// A prime p is a chain head when it cannot be reached by the step, i.e.
// p = 2 or (p - 1) / 2 is not prime.  Every prime belongs to exactly one
// chain: the one grown from its head by repeated doubling while the result
// stays prime.  A head whose chain has length 1 (2p + 1 already composite)
// is called trivial.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsdf {

namespace prime_detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

}  // namespace prime_detail

// Deterministic Miller-Rabin over the full 64-bit range: the witness set
// {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to be exact for
// all n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = prime_detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = prime_detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// One doubling step: 2p + 1 if that is prime, else p itself (the chain
// ends).  p must be prime.
inline std::uint64_t chain_step(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("chain step requires a prime");
  if (p > (UINT64_MAX - 1) / 2) return p;  // 2p + 1 would overflow: treat as end
  const std::uint64_t next = 2 * p + 1;
  return is_prime(next) ? next : p;
}

// Whether prime p starts a chain: it is not the doubling image of a
// smaller prime.
inline bool is_chain_head(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("chain head test requires a prime");
  return p == 2 || !is_prime((p - 1) / 2);
}

// The full chain grown from a head by repeated doubling.
inline std::vector<std::uint64_t> chain(std::uint64_t head) {
  if (!is_prime(head) || !is_chain_head(head))
    throw std::invalid_argument("not a chain head");
  std::vector<std::uint64_t> out{head};
  for (;;) {
    const std::uint64_t next = chain_step(out.back());
    if (next == out.back()) break;
    out.push_back(next);
  }
  return out;
}

// A head is trivial when its chain stops immediately.
inline bool is_trivial_head(std::uint64_t p) {
  if (!is_prime(p) || !is_chain_head(p))
    throw std::invalid_argument("not a chain head");
  return chain_step(p) == p;
}

struct CensusRow {
  int e = 0;                    // threshold exponent
  std::uint64_t n = 0;          // smallest prime above 10^e
  std::uint64_t primes = 0;     // primes <= n
  std::uint64_t heads = 0;      // chain heads <= n
  std::uint64_t trivial = 0;    // trivial heads <= n
  std::string ratio;            // trivial / heads, 10 digits, half-even
};

namespace prime_detail {

// trivial / heads with exactly ten digits after the point, rounding
// half-to-even, computed in exact integer arithmetic.  "0" when there are
// no trivial heads.
inline std::string head_ratio(std::uint64_t trivial, std::uint64_t heads) {
  if (trivial == 0) return "0";
  const std::uint64_t scale = 10'000'000'000ull;
  std::uint64_t q = trivial * scale / heads;
  const std::uint64_t rem = trivial * scale % heads;
  if (2 * rem > heads || (2 * rem == heads && (q & 1) != 0)) ++q;
  std::string frac = std::to_string(q % scale);
  frac.insert(frac.begin(), 10 - frac.size(), '0');
  return std::to_string(q / scale) + "." + frac;
}

// Odd-only sieve of Eratosthenes up to limit inclusive.
class Sieve {
 public:
  explicit Sieve(std::uint64_t limit) : limit_(limit), odd_composite_((limit / 2) + 1, false) {
    for (std::uint64_t i = 3; i * i <= limit; i += 2) {
      if (odd_composite_[i / 2]) continue;
      for (std::uint64_t j = i * i; j <= limit; j += 2 * i)
        odd_composite_[j / 2] = true;
    }
  }

  bool prime(std::uint64_t n) const {
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    return !odd_composite_[n / 2];
  }

  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::vector<bool> odd_composite_;
};

}  // namespace prime_detail

// For each e = 1..emax: let N be the smallest prime above 10^e; count the
// primes, chain heads, and trivial heads up to N, and the trivial/head
// ratio.  One ascending sieve pass serves every threshold.
inline std::vector<CensusRow> census(int emax) {
  if (emax < 1 || emax > 8)
    throw std::invalid_argument("census exponent must be between 1 and 8");
  std::uint64_t pow10 = 1;
  for (int i = 0; i < emax; ++i) pow10 *= 10;
  // Large enough to decide primality of 2p + 1 for every p near the top
  // threshold, and of the threshold primes themselves.
  const prime_detail::Sieve sieve(2 * pow10 + 1000);

  std::vector<std::uint64_t> thresholds;
  for (int e = 1; e <= emax; ++e) {
    std::uint64_t t = 1;
    for (int i = 0; i < e; ++i) t *= 10;
    std::uint64_t n = t + 1;
    while (!sieve.prime(n)) ++n;
    thresholds.push_back(n);
  }

  std::vector<CensusRow> rows;
  std::uint64_t primes = 0, heads = 0, trivial = 0;
  std::size_t next_threshold = 0;
  for (std::uint64_t p = 2; p <= thresholds.back(); ++p) {
    if (!sieve.prime(p)) continue;
    ++primes;
    const bool head = p == 2 || !sieve.prime((p - 1) / 2);
    if (head) {
      ++heads;
      if (!sieve.prime(2 * p + 1)) ++trivial;
    }
    while (next_threshold < thresholds.size() && p == thresholds[next_threshold]) {
      rows.push_back(CensusRow{static_cast<int>(next_threshold) + 1,
                               thresholds[next_threshold], primes, heads,
                               trivial,
                               prime_detail::head_ratio(trivial, heads)});
      ++next_threshold;
    }
  }
  return rows;
}

// Tab-separated table, one line per row, with a header.
inline std::string census_tsv(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "e\tN\tprimes\theads\ttrivial\tratio\n";
  for (const CensusRow& r : rows)
    os << r.e << '\t' << r.n << '\t' << r.primes << '\t' << r.heads << '\t'
       << r.trivial << '\t' << r.ratio << '\n';
  return os.str();
}

}  // namespace gsdf
