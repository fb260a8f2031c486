#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <tuple>
#include <vector>

#include "gsdf/search.hpp"

using namespace gsdf;
using Catch::Matchers::ContainsSubstring;

namespace {

SearchProblem problem(int v, std::array<int, 4> k, long long lambda,
                      TargetStructure structure) {
  SearchProblem p;
  p.v = v;
  p.k = k;
  p.lambda = lambda;
  p.structure = structure;
  return p;
}

using Signature =
    std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>,
               std::vector<int>>;

Signature signature(const SearchSolution& s) {
  return {s.mu, s.family[0].members(), s.family[1].members(),
          s.family[2].members(), s.family[3].members()};
}

std::vector<Signature> signatures(const SearchOutcome& o) {
  std::vector<Signature> out;
  out.reserve(o.solutions.size());
  for (const auto& s : o.solutions) out.push_back(signature(s));
  return out;
}

}  // namespace

TEST_CASE("eligible multipliers per structure", "[search]") {
  CHECK(eligible_multipliers(27, TargetStructure::spin) == std::vector<int>{10, 19});
  CHECK(eligible_multipliers(7, TargetStructure::spin) == std::vector<int>{2, 4});
  CHECK(eligible_multipliers(7, TargetStructure::slide) == std::vector<int>{3, 5, 6});
  CHECK(eligible_multipliers(5, TargetStructure::spin).empty());
  CHECK(eligible_multipliers(13, TargetStructure::spin) == std::vector<int>{3, 9});
  CHECK(eligible_multipliers(3, TargetStructure::slide) == std::vector<int>{2});
}

TEST_CASE("setup validation", "[search]") {
  CHECK_THROWS_WITH(search(problem(7, {4, 2, 2, 2}, 2, TargetStructure::spin)),
                    ContainsSubstring("not well formed"));
  CHECK_THROWS_WITH(search(problem(7, {3, 0, 0, 0}, 1, TargetStructure::spin)),
                    ContainsSubstring("weight equal to v"));
  CHECK_THROWS_WITH(search(problem(7, {3, 3, 3, 1}, 3, TargetStructure::spin)),
                    ContainsSubstring("k1 = k2 = k3"));
  {
    SearchProblem p = problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin);
    p.symmetry = "x*";
    CHECK_THROWS_WITH(search(p), ContainsSubstring("only 's', 'k', '*'"));
    p.symmetry = "sss";
    CHECK_THROWS_WITH(search(p), ContainsSubstring("two or four characters"));
    p.symmetry = "*sk*";
    CHECK_THROWS_WITH(search(p), ContainsSubstring("conflict"));
    p.symmetry = "";
    p.mu = 7;
    CHECK_THROWS_WITH(search(p), ContainsSubstring("multiplier not invertible"));
    p.mu = 0;
    CHECK_THROWS_WITH(search(p), ContainsSubstring("multiplier not invertible"));
  }
}

TEST_CASE("tiny slide search is solved completely", "[search]") {
  // v = 3, blocks sizes (0, 1, 1, 1), lambda 0: the only valid families put
  // a single nonzero residue in block 1.
  const SearchOutcome out = search(problem(3, {0, 1, 1, 1}, 0, TargetStructure::slide));
  CHECK(out.exhausted);
  CHECK(out.multipliers_scanned == std::vector<int>{2});
  REQUIRE(out.solutions.size() == 2);
  for (const auto& s : out.solutions) {
    CHECK(s.mu == 2);
    CHECK(s.report.kind == StructureKind::slide);
    CHECK(verify(s.family).valid);
    CHECK(s.family[0].empty());
    CHECK(s.family[1].size() == 1);
  }
  CHECK(out.solutions[0].family[1].members() == std::vector<int>{1});
  CHECK(out.solutions[1].family[1].members() == std::vector<int>{2});
}

TEST_CASE("spin search at v=7 (explicit multiplier)", "[search]") {
  SearchProblem p = problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin);
  p.mu = 2;
  const SearchOutcome out = search(p);
  CHECK(out.exhausted);
  CHECK(out.multipliers_scanned == std::vector<int>{2});
  CHECK(out.nodes_explored > 0);
  REQUIRE_FALSE(out.solutions.empty());
  for (const auto& s : out.solutions) {
    const VerifyResult vr = verify(s.family);
    REQUIRE(vr.valid);
    CHECK(vr.parameters->lambda == 2);
    CHECK(vr.parameters->weight() == 7);
    CHECK(s.report.kind == StructureKind::spin);
    CHECK(s.report.mu == 2);
    // Independent reclassification agrees.
    CHECK(classify(s.family, 2).kind == StructureKind::spin);
  }

  SECTION("negative multiplier aliases its residue") {
    SearchProblem q = p;
    q.mu = -5;  // -5 = 2 (mod 7)
    const SearchOutcome alias = search(q);
    CHECK(signatures(alias) == signatures(out));
  }

  SECTION("a solution limit cuts the run short") {
    SearchProblem q = p;
    q.limit = 1;
    const SearchOutcome cut = search(q);
    CHECK_FALSE(cut.exhausted);
    CHECK(cut.solutions.size() == 1);
  }

  SECTION("a node budget cuts the run short") {
    SearchProblem q = p;
    q.node_budget = 10;
    const SearchOutcome cut = search(q);
    CHECK_FALSE(cut.exhausted);
    CHECK(cut.nodes_explored <= 10 + 4);  // small overshoot from in-flight work
  }

  SECTION("fixing block 1 reproduces exactly the matching solutions") {
    const std::vector<int> x1 = out.solutions.front().family[1].members();
    SearchProblem q = p;
    q.fixed_x1 = x1;
    const SearchOutcome fixed = search(q);
    CHECK(fixed.exhausted);
    std::vector<Signature> expect;
    for (const auto& s : out.solutions)
      if (s.family[1].members() == x1) expect.push_back(signature(s));
    CHECK(signatures(fixed) == expect);
    CHECK_FALSE(expect.empty());
  }
}

TEST_CASE("scanning all multipliers emits canonical representatives", "[search]") {
  const SearchOutcome out = search(problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin));
  CHECK(out.exhausted);
  CHECK(out.multipliers_scanned == std::vector<int>{2, 4});
  REQUIRE_FALSE(out.solutions.empty());
  for (const auto& s : out.solutions) {
    const auto [cf, cmu] = canonicalize_solution(s.family, s.mu);
    CHECK(cf == s.family);
    CHECK(cmu == s.mu);
  }
  // No duplicates.
  std::vector<Signature> sig = signatures(out);
  std::vector<Signature> uniq = sig;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  CHECK(sig.size() == uniq.size());
}

TEST_CASE("spin search with no eligible multiplier is empty", "[search]") {
  // No unit of order 3 exists mod 25, so there is nothing to scan.
  CHECK(eligible_multipliers(25, TargetStructure::spin).empty());
  SearchProblem p = problem(25, {15, 10, 10, 10}, 20, TargetStructure::spin);
  const SearchOutcome out = search(p);
  CHECK(out.exhausted);
  CHECK(out.multipliers_scanned.empty());
  CHECK(out.solutions.empty());
  CHECK(out.nodes_explored == 0);
}

TEST_CASE("determinism and thread independence", "[search]") {
  SearchProblem p = problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin);
  const SearchOutcome a = search(p);
  const SearchOutcome b = search(p);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(signatures(a) == signatures(b));

  SearchProblem pt = p;
  pt.threads = 3;
  const SearchOutcome c = search(pt);
  CHECK(c.exhausted);
  CHECK(signatures(c) == signatures(a));
}

TEST_CASE("symmetry constraint equals filtering the unconstrained run", "[search]") {
  SearchProblem base = problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin);
  base.mu = 2;
  const SearchOutcome all = search(base);
  REQUIRE(all.exhausted);

  SECTION("symmetric block 1") {
    SearchProblem p = base;
    p.symmetry = "*s";
    const SearchOutcome got = search(p);
    CHECK(got.exhausted);
    std::vector<Signature> expect;
    for (const auto& s : all.solutions)
      if (is_symmetric(s.family[1])) expect.push_back(signature(s));
    CHECK(signatures(got) == expect);
    CHECK_FALSE(got.solutions.empty());
  }

  SECTION("skew block 0") {
    SearchProblem p = base;
    p.symmetry = "k*";
    const SearchOutcome got = search(p);
    CHECK(got.exhausted);
    std::vector<Signature> expect;
    for (const auto& s : all.solutions)
      if (is_skew(s.family[0])) expect.push_back(signature(s));
    CHECK(signatures(got) == expect);
    CHECK_FALSE(got.solutions.empty());
  }

  SECTION("fully symmetric is unsatisfiable here, but provably so") {
    SearchProblem p = base;
    p.symmetry = "ss";
    const SearchOutcome got = search(p);
    CHECK(got.exhausted);
    std::vector<Signature> expect;
    for (const auto& s : all.solutions)
      if (is_symmetric(s.family[0]) && is_symmetric(s.family[1]))
        expect.push_back(signature(s));
    CHECK(signatures(got) == expect);
    CHECK(got.solutions.empty());
  }

  SECTION("a four-character constraint folds onto blocks 2 and 3") {
    SearchProblem p = base;
    p.symmetry = "*s**";
    const SearchOutcome two = search(p);
    p.symmetry = "**s*";  // block 2 symmetric <=> block 1 symmetric
    const SearchOutcome folded = search(p);
    CHECK(signatures(folded) == signatures(two));
  }
}

TEST_CASE("symmetric constraint with odd block size forces residue 0", "[search]") {
  // v = 9, sizes (3, 3, 3, 3), lambda 3, mu = 4 (a unit of order 3 mod 9).
  SearchProblem base = problem(9, {3, 3, 3, 3}, 3, TargetStructure::spin);
  base.mu = 4;
  const SearchOutcome all = search(base);
  REQUIRE(all.exhausted);

  SearchProblem p = base;
  p.symmetry = "*s";
  const SearchOutcome got = search(p);
  CHECK(got.exhausted);
  std::vector<Signature> expect;
  for (const auto& s : all.solutions)
    if (is_symmetric(s.family[1])) expect.push_back(signature(s));
  CHECK(signatures(got) == expect);
  for (const auto& s : got.solutions) CHECK(s.family[1].contains(0));
}

TEST_CASE("orbit-union mode equals filtering by orbit invariance", "[search]") {
  // H = <3> at v = 13 has orbits {0}, {1,3,9}, {2,5,6}, {4,10,12}, {7,8,11}.
  SearchProblem base = problem(13, {3, 6, 6, 6}, 8, TargetStructure::spin);
  base.mu = 3;
  const SearchOutcome all = search(base);
  REQUIRE(all.exhausted);

  SearchProblem p = base;
  p.group = std::vector<int>{3};
  const SearchOutcome got = search(p);
  CHECK(got.exhausted);

  auto invariant = [](const ResidueSet& x) { return scale(x, 3) == x; };
  std::vector<Signature> expect;
  for (const auto& s : all.solutions)
    if (invariant(s.family[0]) && invariant(s.family[1]) &&
        invariant(s.family[2]) && invariant(s.family[3]))
      expect.push_back(signature(s));
  CHECK(signatures(got) == expect);
}

TEST_CASE("orbit atoms that cannot hit the block size leave the run empty",
          "[search]") {
  // <2> at v = 7 has orbit sizes 1, 3, 3; no union has size 2.
  SearchProblem p = problem(7, {3, 2, 2, 2}, 2, TargetStructure::spin);
  p.mu = 2;
  p.group = std::vector<int>{2};
  const SearchOutcome out = search(p);
  CHECK(out.exhausted);
  CHECK(out.solutions.empty());
}
