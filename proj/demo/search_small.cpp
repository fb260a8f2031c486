// Exhaustive search at v = 7 for families with block sizes (3, 2, 2, 2)
// whose last three blocks cycle under a multiplier, printing every
// canonical solution.

#include <iostream>

#include "gsdf/search.hpp"

int main() {
  using namespace gsdf;
  SearchProblem p;
  p.v = 7;
  p.k = {3, 2, 2, 2};
  p.lambda = 2;
  p.structure = TargetStructure::spin;

  const SearchOutcome out = search(p);
  std::cout << "multipliers scanned:";
  for (int mu : out.multipliers_scanned) std::cout << ' ' << mu;
  std::cout << "\n";

  auto block = [](const ResidueSet& x) {
    std::string s = "{";
    bool first = true;
    for (int r : x.members()) {
      if (!first) s += ",";
      s += std::to_string(r);
      first = false;
    }
    return s + "}";
  };
  for (const auto& s : out.solutions)
    std::cout << "mu=" << s.mu << "  X0=" << block(s.family[0])
              << " X1=" << block(s.family[1]) << " X2=" << block(s.family[2])
              << " X3=" << block(s.family[3])
              << "  symbol=" << s.report.symmetry_symbol << "\n";
  std::cout << out.solutions.size() << " solutions, "
            << (out.exhausted ? "search exhausted" : "search cut short")
            << ", " << out.nodes_explored << " nodes\n";
  return out.solutions.empty() ? 1 : 0;
}
