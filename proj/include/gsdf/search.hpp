#pragma once
// Backtracking search for four-block families of weight v whose last three
// blocks are linked by a multiplier.
//
// For a requested multiplier action ("spin": mu cycles X1 -> X2 -> X3 -> X1,
// "slide": the chain does not close), the engine enumerates candidates for
// X1, derives X2 = mu X1 and X3 = mu^2 X1, and completes X0 by backtracking
// against the per-difference quota
//
//   delta(d) = lambda - (c1(d) + c1(mu^-1 d) + c1(mu^-2 d)),
//
// where c1 is the difference count of X1 alone.  Candidates for X1 are
// pruned during construction: partial counts only grow, so as soon as
// c1(d) + c1(mu^-1 d) + c1(mu^-2 d) exceeds lambda the branch is dead.
//
// X1 candidates are either raw subsets, structurally symmetric sets (whole
// {x, -x} pairs, 0 forced when the size is odd), structurally skew sets
// (exactly one of each pair), or unions of orbits of a given unit subgroup.
// X0 is completed in the same mode system.
//
// Work is split across threads on a fixed-depth prefix of the X1 decision
// sequence; the solution set is independent of the thread count, and the
// node counter is deterministic for a single thread.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "family.hpp"
#include "residue_set.hpp"

namespace gsdf {

enum class TargetStructure { spin, slide };

inline std::string to_string(TargetStructure t) {
  return t == TargetStructure::spin ? "spin" : "slide";
}

struct SearchProblem {
  int v = 1;
  std::array<int, 4> k{0, 0, 0, 0};
  long long lambda = 0;
  TargetStructure structure = TargetStructure::spin;
  // Search only this multiplier instead of all eligible ones.  Honored as
  // given (must be a unit); no order filter is applied.
  std::optional<int> mu;
  // Generators of a unit subgroup H; blocks are then unions of H-orbits.
  std::optional<std::vector<int>> group;
  // "", two, or four characters over 's' (symmetric), 'k' (skew),
  // '*' (unconstrained), for (X0, X1) or (X0, X1, X2, X3).
  std::string symmetry;
  // Skip the X1 enumeration and complete X0 for exactly this X1.
  std::optional<std::vector<int>> fixed_x1;
  std::size_t limit = 0;         // stop after this many accepted solutions (0 = all)
  unsigned threads = 1;
  std::uint64_t node_budget = 0;  // abort once this many nodes were explored (0 = off)
};

struct SearchSolution {
  DifferenceFamily family;
  int mu;
  StructureReport report;

  SearchSolution(DifferenceFamily f, int m, StructureReport r)
      : family(std::move(f)), mu(m), report(std::move(r)) {}
};

struct SearchOutcome {
  std::vector<SearchSolution> solutions;
  bool exhausted = true;      // false when a limit or node budget cut the run short
  std::uint64_t nodes_explored = 0;
  std::vector<int> multipliers_scanned;
};

// Multipliers worth scanning: for spin, units of order exactly 3 (the cycle
// X1 -> X2 -> X3 -> X1 closes automatically); for slide, all units u >= 2
// whose cube is not 1 (a cube equal to 1 forces the chain to close, so such
// u can never slide).
inline std::vector<int> eligible_multipliers(int v, TargetStructure t) {
  std::vector<int> out;
  for (int u = 2; u < v; ++u) {
    if (std::gcd(u, v) != 1) continue;
    const long long cube = static_cast<long long>(u) * u % v * u % v;
    const bool order3 = cube == 1;
    if (t == TargetStructure::spin ? order3 : !order3) out.push_back(u);
  }
  return out;
}

// Between a solution (F, mu) and its mirror ((X0, X3, X2, X1), mu^-1) —
// which realizes the same structure — pick the lexicographically smaller
// by (mu, X1, X0, X2, X3).  Search output keeps only this representative.
inline std::pair<DifferenceFamily, int> canonicalize_solution(
    const DifferenceFamily& f, int mu) {
  const int v = f.v();
  const int inv = mod_inverse(v, mu);
  DifferenceFamily mirror(f[0], f[3], f[2], f[1]);
  auto key = [](const DifferenceFamily& g, int m) {
    return std::tuple(m, g[1].members(), g[0].members(), g[2].members(),
                      g[3].members());
  };
  if (key(mirror, inv) < key(f, mu)) return {std::move(mirror), inv};
  return {f, mu};
}

namespace search_detail {

// One decision in the backtracking order.  Exactly one option is taken;
// each option contributes a fixed residue list.  Subset-style decisions
// carry an empty option; choice-style decisions (skew pairs) do not.
struct Decision {
  std::vector<std::vector<int>> options;
  int min_add = 0;
  int max_add = 0;
  int sort_key = 0;
};

inline char merged_block123_constraint(const std::string& symmetry) {
  // X2 and X3 are unit multiples of X1, and scaling by a unit preserves
  // both symmetry and skewness, so any constraint on X2 or X3 is really a
  // constraint on X1.  Conflicting constraints are a caller error.
  char c = '*';
  for (std::size_t i = 1; i < symmetry.size(); ++i) {
    const char ci = symmetry[i];
    if (ci == '*') continue;
    if (c != '*' && c != ci)
      throw std::invalid_argument(
          "symmetry constraints on blocks 1-3 conflict: the blocks are unit "
          "multiples of one another");
    c = ci;
  }
  return c;
}

// Decision list for one block under constraint c ('*', 's', 'k') built
// from single residues, from {x, -x} pairs, or from orbits of H.
// Returns nullopt when the constraint is structurally unsatisfiable for
// the requested size (then the search result is empty but exhaustive).
inline std::optional<std::vector<Decision>> block_decisions(
    int v, char c, int size, const std::optional<UnitSubgroup>& h) {
  std::vector<Decision> out;
  auto push_subset = [&](std::vector<int> members) {
    Decision d;
    d.sort_key = *std::min_element(members.begin(), members.end());
    d.min_add = 0;
    d.max_add = static_cast<int>(members.size());
    d.options = {std::move(members), {}};
    out.push_back(std::move(d));
  };
  auto push_forced = [&](std::vector<int> members) {
    Decision d;
    d.sort_key = *std::min_element(members.begin(), members.end());
    d.min_add = d.max_add = static_cast<int>(members.size());
    d.options = {std::move(members)};
    out.push_back(std::move(d));
  };
  auto push_choice = [&](std::vector<int> a, std::vector<int> b) {
    Decision d;
    d.sort_key = std::min(*std::min_element(a.begin(), a.end()),
                          *std::min_element(b.begin(), b.end()));
    if (*std::min_element(b.begin(), b.end()) < *std::min_element(a.begin(), a.end()))
      std::swap(a, b);
    d.min_add = d.max_add = static_cast<int>(a.size());
    d.options = {std::move(a), std::move(b)};
    out.push_back(std::move(d));
  };

  if (h) {
    const auto orbs = orbits(*h);
    if (c == '*') {
      for (const auto& o : orbs) push_subset(o);
    } else {
      // Pair each orbit with its negation.
      std::vector<char> used(orbs.size(), 0);
      auto orbit_index_of = [&](int r) {
        for (std::size_t i = 0; i < orbs.size(); ++i)
          if (std::binary_search(orbs[i].begin(), orbs[i].end(), r)) return i;
        return orbs.size();
      };
      for (std::size_t i = 0; i < orbs.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        const int neg_min = normalize_residue(v, -orbs[i].front());
        const std::size_t j = orbit_index_of(neg_min);
        const bool self_paired = j == i;
        if (!self_paired) used[j] = 1;
        if (c == 's') {
          if (self_paired) {
            push_subset(orbs[i]);
          } else {
            std::vector<int> both = orbs[i];
            both.insert(both.end(), orbs[j].begin(), orbs[j].end());
            std::sort(both.begin(), both.end());
            push_subset(std::move(both));
          }
        } else {  // 'k'
          if (orbs[i].front() == 0) continue;  // 0 can never lie in a skew set
          if (self_paired) return std::nullopt;
          push_choice(orbs[i], orbs[j]);
        }
      }
      if (c == 'k') {
        int total = 0;
        for (const auto& d : out) total += d.max_add;
        if (total != size || size != (v - 1) / 2) return std::nullopt;
      }
    }
  } else {
    if (c == '*') {
      for (int r = 0; r < v; ++r) push_subset({r});
    } else if (c == 's') {
      if (size % 2 == 1) push_forced({0});
      for (int r = 1; r <= (v - 1) / 2; ++r) push_subset({r, v - r});
    } else {  // 'k'
      if (size != (v - 1) / 2) return std::nullopt;
      for (int r = 1; r <= (v - 1) / 2; ++r) push_choice({r}, {v - r});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Decision& a, const Decision& b) {
                     return a.sort_key < b.sort_key;
                   });
  // Reachability of the exact target size.
  int min_total = 0, max_total = 0;
  for (const auto& d : out) {
    min_total += d.min_add;
    max_total += d.max_add;
  }
  if (size < min_total || size > max_total) return std::nullopt;
  return out;
}

// Suffix sums of min_add / max_add, used for size pruning.
struct SuffixBounds {
  std::vector<int> min_rest, max_rest;
  explicit SuffixBounds(const std::vector<Decision>& ds)
      : min_rest(ds.size() + 1, 0), max_rest(ds.size() + 1, 0) {
    for (std::size_t i = ds.size(); i-- > 0;) {
      min_rest[i] = min_rest[i + 1] + ds[i].min_add;
      max_rest[i] = max_rest[i + 1] + ds[i].max_add;
    }
  }
};

}  // namespace search_detail

class Searcher {
 public:
  explicit Searcher(const SearchProblem& prob) : p_(prob), v_(prob.v) {
    const ParameterSet ps{p_.v, p_.k, p_.lambda};
    const ParameterReport rep = check_parameters(ps);
    if (!rep.well_formed)
      throw std::invalid_argument(
          "search parameters are not well formed (counting identity or ranges)");
    if (!rep.gs_type)
      throw std::invalid_argument("search requires weight equal to v");
    if (!rep.special)
      throw std::invalid_argument("search requires k1 = k2 = k3");
    for (char c : p_.symmetry)
      if (c != 's' && c != 'k' && c != '*')
        throw std::invalid_argument(
            "symmetry must use only 's', 'k', '*'");
    if (!p_.symmetry.empty() && p_.symmetry.size() != 2 && p_.symmetry.size() != 4)
      throw std::invalid_argument("symmetry must have two or four characters");
    cons0_ = p_.symmetry.empty() ? '*' : p_.symmetry[0];
    cons1_ = search_detail::merged_block123_constraint(p_.symmetry);
    if (p_.group) group_ = subgroup_closure(v_, *p_.group);
    if (p_.mu) {
      const int m = normalize_residue(v_, *p_.mu);
      if (std::gcd(m, v_) != 1)
        throw std::invalid_argument("multiplier not invertible");
      mus_ = {m};
    } else {
      mus_ = eligible_multipliers(v_, p_.structure);
    }
  }

  SearchOutcome run() {
    SearchOutcome out;
    out.multipliers_scanned = mus_;

    auto d1 = search_detail::block_decisions(v_, cons1_, p_.k[1], group_);
    auto d0 = search_detail::block_decisions(v_, cons0_, p_.k[0], group_);
    if (!d1 || !d0) return out;  // structurally unsatisfiable: empty, exhausted
    decisions1_ = std::move(*d1);
    decisions0_ = std::move(*d0);
    bounds1_.emplace(decisions1_);
    bounds0_.emplace(decisions0_);

    for (int mu : mus_) {
      if (stop_.load(std::memory_order_relaxed)) break;
      // mu = 1 can never act as spin or slide; a cube equal to 1 closes the
      // chain, so it can never slide.  Both cases are provably empty and
      // skipping them keeps the run exhaustive.
      if (mu == 1) continue;
      const long long cube = static_cast<long long>(mu) * mu % v_ * mu % v_;
      if (p_.structure == TargetStructure::slide && cube == 1) continue;
      run_multiplier(mu);
    }

    out.nodes_explored = nodes_.load();
    out.exhausted = !cut_short_.load();
    finalize(out);
    return out;
  }

 private:
  struct Worker {
    std::vector<int> members1, members0;
    std::vector<int> pc1, pc0;       // partial difference counts
    std::vector<int> delta;          // X0 quota for the current X1
    int size1 = 0, size0 = 0;
    // Current multiplier context (copied per mu).
    int mu = 1, s3 = 1;
    std::vector<int> mul_mu, mul_mu2, inv_mu, inv_mu2;
    long long lambda = 0;
  };

  void run_multiplier(int mu) {
    // Shared per-mu context template.
    Worker proto;
    proto.mu = mu;
    proto.lambda = p_.lambda;
    proto.mul_mu.resize(static_cast<std::size_t>(v_));
    proto.mul_mu2.resize(static_cast<std::size_t>(v_));
    proto.inv_mu.resize(static_cast<std::size_t>(v_));
    proto.inv_mu2.resize(static_cast<std::size_t>(v_));
    const int inv = mod_inverse(v_, mu);
    for (int d = 0; d < v_; ++d) {
      proto.mul_mu[static_cast<std::size_t>(d)] =
          static_cast<int>(static_cast<long long>(mu) * d % v_);
      proto.mul_mu2[static_cast<std::size_t>(d)] =
          static_cast<int>(static_cast<long long>(mu) * mu % v_ * d % v_);
      proto.inv_mu[static_cast<std::size_t>(d)] =
          static_cast<int>(static_cast<long long>(inv) * d % v_);
      proto.inv_mu2[static_cast<std::size_t>(d)] =
          static_cast<int>(static_cast<long long>(inv) * inv % v_ * d % v_);
    }
    proto.s3 = static_cast<int>(static_cast<long long>(mu) * mu % v_ * mu % v_);
    proto.pc1.assign(static_cast<std::size_t>(v_), 0);
    proto.pc0.assign(static_cast<std::size_t>(v_), 0);
    proto.delta.assign(static_cast<std::size_t>(v_), 0);

    if (p_.fixed_x1) {
      Worker w = proto;
      const ResidueSet x1 = ResidueSet::of(v_, *p_.fixed_x1);
      if (x1.size() != p_.k[1]) return;
      for (int d = 1; d < v_; ++d)
        w.pc1[static_cast<std::size_t>(d)] = shifted_intersection_count(x1, d);
      w.members1 = x1.members();
      w.size1 = static_cast<int>(w.members1.size());
      process_x1_candidate(w);
      return;
    }

    // Prefix jobs: fix the options of the first D decisions.
    const unsigned threads = std::max(1u, p_.threads);
    std::size_t depth = 0;
    std::uint64_t width = 1;
    const std::uint64_t want = std::max<std::uint64_t>(4, 4ull * threads);
    while (depth < decisions1_.size() && width < want && width <= 512)
      width *= decisions1_[depth++].options.size();
    const std::uint64_t jobs = width;
    std::atomic<std::uint64_t> next_job{0};

    auto worker_fn = [&]() {
      Worker w = proto;
      for (;;) {
        const std::uint64_t job = next_job.fetch_add(1, std::memory_order_relaxed);
        if (job >= jobs || stop_.load(std::memory_order_relaxed)) break;
        // Decode the job id into option indices, most significant first.
        std::vector<std::size_t> picks(depth);
        std::uint64_t rest = job;
        for (std::size_t i = depth; i-- > 0;) {
          const std::size_t base = decisions1_[i].options.size();
          picks[i] = static_cast<std::size_t>(rest % base);
          rest /= base;
        }
        // Replay the prefix; abandon the job if any step is infeasible.
        std::size_t applied = 0;
        bool alive = true;
        for (std::size_t i = 0; i < depth && alive; ++i) {
          if (!take_option1(w, i, picks[i])) {
            alive = false;
            break;
          }
          ++applied;
        }
        if (alive) dfs1(w, depth);
        while (applied-- > 0) undo_option1(w, applied, picks[applied]);
      }
    };

    if (threads == 1) {
      worker_fn();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker_fn);
      for (auto& t : pool) t.join();
    }
  }

  // --- X1 phase ------------------------------------------------------------

  bool count_node() {
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (p_.node_budget != 0 && n > p_.node_budget) {
      cut_short_.store(true);
      stop_.store(true);
      return false;
    }
    return true;
  }

  // Apply option oi of decision di to X1; returns false (fully rolled back)
  // if a size bound or the running triple-count bound is violated.
  bool take_option1(Worker& w, std::size_t di, std::size_t oi) {
    if (!count_node()) return false;
    const auto& dec = decisions1_[di];
    const auto& opt = dec.options[oi];
    const int projected = w.size1 + static_cast<int>(opt.size());
    if (projected + bounds1_->min_rest[di + 1] > p_.k[1] ||
        projected + bounds1_->max_rest[di + 1] < p_.k[1])
      return false;
    std::size_t added = 0;
    for (int x : opt) {
      if (!add_residue1(w, x)) {
        while (added-- > 0) remove_residue1(w, opt[added]);
        return false;
      }
      ++added;
    }
    return true;
  }

  void undo_option1(Worker& w, std::size_t di, std::size_t oi) {
    const auto& opt = decisions1_[di].options[oi];
    for (std::size_t i = opt.size(); i-- > 0;) remove_residue1(w, opt[i]);
  }

  // The bound: c1(d) + c1(mu^-1 d) + c1(mu^-2 d) <= lambda must hold for
  // the finished X1, and partial counts only grow.
  bool triple_ok(const Worker& w, int d) const {
    const long long t = w.pc1[static_cast<std::size_t>(d)] +
                        w.pc1[static_cast<std::size_t>(w.inv_mu[static_cast<std::size_t>(d)])] +
                        w.pc1[static_cast<std::size_t>(w.inv_mu2[static_cast<std::size_t>(d)])];
    return t <= w.lambda;
  }

  bool add_residue1(Worker& w, int x) {
    const std::size_t n = w.members1.size();
    for (std::size_t t = 0; t < n; ++t) {
      int d = x - w.members1[t];
      if (d < 0) d += v_;
      ++w.pc1[static_cast<std::size_t>(d)];
      ++w.pc1[static_cast<std::size_t>(v_ - d)];
      // The increments at d and v-d affect the triples of e, mu e, mu^2 e
      // for e in {d, v-d}.
      bool ok = true;
      for (int e : {d, v_ - d}) {
        if (!triple_ok(w, e) ||
            !triple_ok(w, w.mul_mu[static_cast<std::size_t>(e)]) ||
            !triple_ok(w, w.mul_mu2[static_cast<std::size_t>(e)])) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        // Roll back everything this call added, including step t.
        for (std::size_t u = 0; u <= t; ++u) {
          int e = x - w.members1[u];
          if (e < 0) e += v_;
          --w.pc1[static_cast<std::size_t>(e)];
          --w.pc1[static_cast<std::size_t>(v_ - e)];
        }
        return false;
      }
    }
    w.members1.push_back(x);
    ++w.size1;
    return true;
  }

  void remove_residue1(Worker& w, int x) {
    w.members1.pop_back();
    --w.size1;
    for (int y : w.members1) {
      int d = x - y;
      if (d < 0) d += v_;
      --w.pc1[static_cast<std::size_t>(d)];
      --w.pc1[static_cast<std::size_t>(v_ - d)];
    }
  }

  void dfs1(Worker& w, std::size_t di) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (di == decisions1_.size()) {
      if (w.size1 == p_.k[1]) process_x1_candidate(w);
      return;
    }
    const auto& dec = decisions1_[di];
    for (std::size_t oi = 0; oi < dec.options.size(); ++oi) {
      if (stop_.load(std::memory_order_relaxed)) return;
      if (take_option1(w, di, oi)) {
        dfs1(w, di + 1);
        undo_option1(w, di, oi);
      }
    }
  }

  // --- per-candidate leaf work --------------------------------------------

  void process_x1_candidate(Worker& w) {
    // Structure condition via s3 = mu^3: spin needs s3 X1 = X1, slide needs
    // s3 X1 != X1.  (Sizes match, so one-sided containment is enough.)
    const ResidueSet x1 = ResidueSet::of(v_, w.members1);
    bool fixed = true;
    for (int m : w.members1) {
      if (!x1.contains(static_cast<long long>(w.s3) * m)) {
        fixed = false;
        break;
      }
    }
    if (p_.structure == TargetStructure::spin ? !fixed : fixed) return;

    // Quota for X0.  delta must be nonnegative (guaranteed by the running
    // bound) and symmetric in d <-> -d, and its total is k0 (k0 - 1).
    for (int d = 1; d < v_; ++d) {
      const long long used =
          w.pc1[static_cast<std::size_t>(d)] +
          w.pc1[static_cast<std::size_t>(w.inv_mu[static_cast<std::size_t>(d)])] +
          w.pc1[static_cast<std::size_t>(w.inv_mu2[static_cast<std::size_t>(d)])];
      w.delta[static_cast<std::size_t>(d)] = static_cast<int>(w.lambda - used);
    }
    for (int d = 1; d <= (v_ - 1) / 2; ++d)
      if (w.delta[static_cast<std::size_t>(d)] !=
          w.delta[static_cast<std::size_t>(v_ - d)])
        return;

    std::fill(w.pc0.begin(), w.pc0.end(), 0);
    w.members0.clear();
    w.size0 = 0;
    dfs0(w, 0, x1);
  }

  // --- X0 phase ------------------------------------------------------------

  bool take_option0(Worker& w, std::size_t di, std::size_t oi) {
    if (!count_node()) return false;
    const auto& dec = decisions0_[di];
    const auto& opt = dec.options[oi];
    const int projected = w.size0 + static_cast<int>(opt.size());
    if (projected + bounds0_->min_rest[di + 1] > p_.k[0] ||
        projected + bounds0_->max_rest[di + 1] < p_.k[0])
      return false;
    std::size_t added = 0;
    for (int x : opt) {
      if (!add_residue0(w, x)) {
        while (added-- > 0) remove_residue0(w, opt[added]);
        return false;
      }
      ++added;
    }
    return true;
  }

  void undo_option0(Worker& w, std::size_t di, std::size_t oi) {
    const auto& opt = decisions0_[di].options[oi];
    for (std::size_t i = opt.size(); i-- > 0;) remove_residue0(w, opt[i]);
  }

  bool add_residue0(Worker& w, int x) {
    for (int y : w.members0) {
      int d = x - y;
      if (d < 0) d += v_;
      if (w.pc0[static_cast<std::size_t>(d)] + 1 >
              w.delta[static_cast<std::size_t>(d)] ||
          w.pc0[static_cast<std::size_t>(v_ - d)] + 1 >
              w.delta[static_cast<std::size_t>(v_ - d)]) {
        // Undo increments from earlier members of this same call.
        for (int z : w.members0) {
          if (z == y) break;
          int e = x - z;
          if (e < 0) e += v_;
          --w.pc0[static_cast<std::size_t>(e)];
          --w.pc0[static_cast<std::size_t>(v_ - e)];
        }
        return false;
      }
      ++w.pc0[static_cast<std::size_t>(d)];
      ++w.pc0[static_cast<std::size_t>(v_ - d)];
    }
    w.members0.push_back(x);
    ++w.size0;
    return true;
  }

  void remove_residue0(Worker& w, int x) {
    w.members0.pop_back();
    --w.size0;
    for (int y : w.members0) {
      int d = x - y;
      if (d < 0) d += v_;
      --w.pc0[static_cast<std::size_t>(d)];
      --w.pc0[static_cast<std::size_t>(v_ - d)];
    }
  }

  void dfs0(Worker& w, std::size_t di, const ResidueSet& x1) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (di == decisions0_.size()) {
      if (w.size0 == p_.k[0]) accept(w, x1);
      return;
    }
    const auto& dec = decisions0_[di];
    for (std::size_t oi = 0; oi < dec.options.size(); ++oi) {
      if (stop_.load(std::memory_order_relaxed)) return;
      if (take_option0(w, di, oi)) {
        dfs0(w, di + 1, x1);
        undo_option0(w, di, oi);
      }
    }
  }

  void accept(Worker& w, const ResidueSet& x1) {
    // Assemble and re-check from first principles before keeping anything:
    // the family must verify with the requested lambda and classify as the
    // requested structure under this multiplier.
    DifferenceFamily fam(ResidueSet::of(v_, w.members0), x1, scale(x1, w.mu),
                         scale(scale(x1, w.mu), w.mu));
    const VerifyResult vr = verify(fam);
    if (!vr.valid || vr.parameters->lambda != p_.lambda) return;
    const StructureReport rep = classify(fam, w.mu);
    const bool want_spin = p_.structure == TargetStructure::spin;
    if (rep.kind != (want_spin ? StructureKind::spin : StructureKind::slide))
      return;
    std::lock_guard<std::mutex> lock(sink_mutex_);
    found_.emplace_back(std::move(fam), w.mu, rep);
    if (p_.limit != 0 && found_.size() >= p_.limit) {
      cut_short_.store(true);
      stop_.store(true);
    }
  }

  // --- output normalization ------------------------------------------------

  void finalize(SearchOutcome& out) {
    using Key = std::tuple<int, std::vector<int>, std::vector<int>,
                           std::vector<int>, std::vector<int>>;
    auto key_of = [](const SearchSolution& s) {
      return Key(s.mu, s.family[1].members(), s.family[0].members(),
                 s.family[2].members(), s.family[3].members());
    };
    std::vector<std::pair<Key, std::size_t>> keyed;
    keyed.reserve(found_.size());
    for (std::size_t i = 0; i < found_.size(); ++i)
      keyed.emplace_back(key_of(found_[i]), i);
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) {
                              return a.first == b.first;
                            }),
                keyed.end());
    // Drop the larger half of each mirror pair when both were found.
    std::vector<Key> all_keys;
    all_keys.reserve(keyed.size());
    for (const auto& ki : keyed) all_keys.push_back(ki.first);
    std::vector<std::size_t> kept;
    for (const auto& ki : keyed) {
      const SearchSolution& s = found_[ki.second];
      const int inv = mod_inverse(v_, s.mu);
      const Key mirror(inv, s.family[3].members(), s.family[0].members(),
                       s.family[2].members(), s.family[1].members());
      if (mirror < ki.first &&
          std::binary_search(all_keys.begin(), all_keys.end(), mirror))
        continue;
      kept.push_back(ki.second);
    }
    out.solutions.clear();
    out.solutions.reserve(kept.size());
    for (std::size_t i : kept) out.solutions.push_back(std::move(found_[i]));
  }

  SearchProblem p_;
  int v_;
  char cons0_ = '*', cons1_ = '*';
  std::optional<UnitSubgroup> group_;
  std::vector<int> mus_;
  std::vector<search_detail::Decision> decisions1_, decisions0_;
  std::optional<search_detail::SuffixBounds> bounds1_, bounds0_;

  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::atomic<bool> cut_short_{false};
  std::mutex sink_mutex_;
  std::vector<SearchSolution> found_;
};

inline SearchOutcome search(const SearchProblem& prob) {
  Searcher s(prob);
  return s.run();
}

}  // namespace gsdf
