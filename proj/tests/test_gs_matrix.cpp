#include <catch2/catch_amalgamated.hpp>

#include "gsdf/family.hpp"
#include "gsdf/gs_matrix.hpp"

using namespace gsdf;
using Catch::Matchers::ContainsSubstring;

namespace {

DifferenceFamily qr7_family() {
  return DifferenceFamily(ResidueSet::of(7, {0}), ResidueSet::of(7, {1, 2, 4}),
                          ResidueSet::of(7, {1, 2, 4}),
                          ResidueSet::of(7, {1, 2, 4}));
}

std::string row_signs(const PMMatrix& m, int r) {
  std::string out;
  for (int c = 0; c < m.order(); ++c) out += m.minus_at(r, c) ? '-' : '+';
  return out;
}

}  // namespace

TEST_CASE("pm_row and circulant", "[gs_matrix]") {
  const ResidueSet x = ResidueSet::of(7, {1, 2, 4});
  CHECK(pm_row(x) == std::vector<int>{1, -1, -1, 1, -1, 1, 1});

  const PMMatrix a = circulant(x);
  REQUIRE(a.order() == 7);
  // Row r has -1 exactly at columns r + {1, 2, 4}.
  CHECK(row_signs(a, 0) == "+--+-++");
  CHECK(row_signs(a, 1) == "++--+-+");
  CHECK(row_signs(a, 6) == "--+-+++");  // wraps: -1 at 6 + {1, 2, 4} = {0, 1, 3}

  // Circulant times its transpose realizes the autocorrelation: the (r, c)
  // dot product equals paf at shift c - r.
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      long long dot = 0;
      for (int j = 0; j < 7; ++j) dot += a.sign(r, j) * a.sign(c, j);
      CHECK(dot == paf(x, c - r));
    }
  }
}

TEST_CASE("back_identity is the back-diagonal involution", "[gs_matrix]") {
  const auto r = back_identity(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(r[i][j] == ((i + j) % 5 == 0 ? 1 : 0));
  // Symmetric and an involution.
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(r[i][j] == r[j][i]);
      int prod = 0;
      for (int t = 0; t < 5; ++t) prod += r[i][t] * r[t][j];
      CHECK(prod == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("assembly at v = 1 gives the canonical order-4 matrix", "[gs_matrix]") {
  const PMMatrix m = assemble_gs(DifferenceFamily(1));
  REQUIRE(m.order() == 4);
  CHECK(row_signs(m, 0) == "++++");
  CHECK(row_signs(m, 1) == "-+-+");
  CHECK(row_signs(m, 2) == "-++-");
  CHECK(row_signs(m, 3) == "--++");
  CHECK(is_hadamard(m));
  CHECK(is_skew_type(m));
}

TEST_CASE("assembly of a full-weight family is orthogonal", "[gs_matrix]") {
  const DifferenceFamily f = qr7_family();
  REQUIRE(verify(f).valid);
  REQUIRE(verify(f).parameters->weight() == 7);
  const PMMatrix m = assemble_gs(f);
  REQUIRE(m.order() == 28);
  CHECK(is_hadamard(m));
  // Block 0 contains 0, so the diagonal picks up -1 entries: not skew-type.
  CHECK_FALSE(is_skew_type(m));

  // A family whose weight is off must fail the orthogonality test.
  DifferenceFamily off(ResidueSet::of(7, {0, 1}), ResidueSet::of(7, {1, 2, 4}),
                       ResidueSet::of(7, {1, 2, 4}), ResidueSet::of(7, {1, 2, 4}));
  CHECK_FALSE(is_hadamard(assemble_gs(off)));
}

TEST_CASE("is_hadamard and is_skew_type on hand-built matrices", "[gs_matrix]") {
  PMMatrix h(2);
  h.set_minus(1, 1, true);  // [[+,+],[+,-]]
  CHECK(is_hadamard(h));
  CHECK_FALSE(is_skew_type(h));  // -1 on the diagonal

  PMMatrix s(2);
  s.set_minus(1, 0, true);  // [[+,+],[-,+]]
  CHECK(is_hadamard(s));
  CHECK(is_skew_type(s));

  PMMatrix bad(2);  // all +1: rows not orthogonal
  CHECK_FALSE(is_hadamard(bad));

  PMMatrix one(1);
  CHECK(is_hadamard(one));  // no pairs to violate
}

TEST_CASE("matrix text round trip", "[gs_matrix]") {
  const PMMatrix m = assemble_gs(qr7_family());
  const std::string text = matrix_to_text(m);
  CHECK(text.rfind("order 28\n", 0) == 0);
  CHECK(text.back() == '\n');
  const PMMatrix back = matrix_from_text(text);
  CHECK(back == m);

  CHECK_THROWS_WITH(matrix_from_text("norder 3\n+++\n"),
                    ContainsSubstring("order N"));
  CHECK_THROWS_WITH(matrix_from_text("order 2\n++\n+\n"),
                    ContainsSubstring("wrong length"));
  CHECK_THROWS_WITH(matrix_from_text("order 2\n++\n+x\n"),
                    ContainsSubstring("'+' or '-'"));
}
