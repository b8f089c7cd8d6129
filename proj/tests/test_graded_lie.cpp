#include "ncurv/graded_lie.hpp"

#include <doctest.h>

using namespace ncurv;

namespace {

Vector unit(Index n, Index i) {
  Vector v = Vector::Zero(n);
  v(i) = 1;
  return v;
}

}  // namespace

TEST_CASE("builtins satisfy Jacobi and are generated in degree -1") {
  for (const char* name : {"abelian:1", "abelian:4", "heisenberg:1", "heisenberg:3", "heis:2", "engel"}) {
    CAPTURE(name);
    const GradedLieAlgebra g = builtin(name);
    CHECK(check_jacobi(g).empty());
    CHECK(g.is_negatively_graded());
    CHECK(g.generated_in_degree_minus_one());
  }
  CHECK(engel_symbol().depth() == 3);
  CHECK(heisenberg(2).dim() == 5);
  CHECK_THROWS_AS(builtin("heisenberg"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("sl:2"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("abelian:x"), std::invalid_argument);
}

TEST_CASE("Jacobi negative control") {
  // [x1, x2] = y and [x3, y] = z: the jacobiator on (x1, x2, x3) is z.
  std::vector<BasisElement> basis{{"x1", -1}, {"x2", -1}, {"x3", -1}, {"y", -2}, {"z", -3}};
  GradedLieAlgebra::BracketTable t;
  t[{0, 1}] = unit(5, 3);
  t[{2, 3}] = unit(5, 4);
  const GradedLieAlgebra g(basis, t);
  const auto v = check_jacobi(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 0);
  CHECK(v[0].j == 1);
  CHECK(v[0].k == 2);
  CHECK(v[0].jacobiator == unit(5, 4));
}

TEST_CASE("construction rejects ill-graded brackets") {
  std::vector<BasisElement> basis{{"a", -1}, {"b", -1}, {"c", -1}};
  GradedLieAlgebra::BracketTable t;
  t[{0, 1}] = unit(3, 2);
  CHECK_THROWS_AS(GradedLieAlgebra(basis, t), std::invalid_argument);
  GradedLieAlgebra::BracketTable diag;
  diag[{1, 1}] = unit(3, 0);
  CHECK_THROWS_AS(GradedLieAlgebra(basis, diag), std::invalid_argument);
}

TEST_CASE("antisymmetry of stored brackets") {
  const GradedLieAlgebra h = heisenberg(1);
  CHECK(h.bracket_basis(0, 1) == unit(3, 2));
  CHECK(h.bracket_basis(1, 0) == -unit(3, 2));
  CHECK(h.bracket_basis(0, 0).isZero());
  CHECK(format_element(h, h.bracket_basis(1, 0)) == "-z");
}

TEST_CASE("degree-zero derivation dimensions") {
  // gl(n) for abelian(n); csp(2r) for heis(r); a 3-dimensional solvable
  // algebra for Engel.
  for (int n = 1; n <= 4; ++n) CHECK(derivations_of_degree(abelian(n), 0).dim() == n * n);
  for (int r = 1; r <= 3; ++r) CHECK(derivations_of_degree(heisenberg(r), 0).dim() == r * (2 * r + 1) + 1);
  const DerivationSubalgebra e = derivations_of_degree(engel_symbol(), 0);
  CHECK(e.dim() == 3);
  for (const auto& d : e.basis) CHECK(is_derivation(engel_symbol(), d, 0));
  validate_degree_zero_subalgebra(e);
  // A degree-1 derivation of an algebra living in degrees -3..-1 must shift
  // y4 out of the algebra; the Engel symbol has none of degree 3.
  CHECK(derivations_of_degree(engel_symbol(), 3).dim() == 0);
}

TEST_CASE("orthogonal subalgebra and validation") {
  const GradedLieAlgebra a = abelian(3);
  const DerivationSubalgebra o = orthogonal_subalgebra(a);
  CHECK(o.dim() == 3);
  CHECK(o.labels == std::vector<std::string>{"o12", "o13", "o23"});
  validate_degree_zero_subalgebra(o);
  CHECK_THROWS_AS(orthogonal_subalgebra(heisenberg(1)), std::invalid_argument);

  // Not closed under commutator: E_12 and E_21 alone.
  Matrix e12 = Matrix::Zero(2, 2), e21 = Matrix::Zero(2, 2);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  const auto bad = make_derivation_subalgebra(abelian(2), {e12, e21}, {"e12", "e21"});
  CHECK_THROWS_AS(validate_degree_zero_subalgebra(bad), std::invalid_argument);
  // Not a derivation of the Heisenberg algebra: scales p without touching z.
  Matrix s = Matrix::Zero(3, 3);
  s(0, 0) = 1;
  CHECK_FALSE(is_derivation(heisenberg(1), s, 0));
}

TEST_CASE("inner derivations have negative degree") {
  const GradedLieAlgebra g = engel_symbol();
  for (Index i : g.indices_of_degree(-1)) CHECK(is_derivation(g, g.ad(g.unit(i)), -1));
  CHECK(is_derivation(g, g.ad(g.unit(2)), -2));
  CHECK_FALSE(is_derivation(g, g.ad(g.unit(0)), 0));
}
