#include "ncurv/vf_calculus.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace ncurv;

namespace {

PolyVectorField random_field(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> e(0, 2), count(0, 3);
  PolyVectorField x(n);
  for (auto& c : x.coeffs) {
    c = Polynomial(n);
    const int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
      Exponent a(static_cast<std::size_t>(n));
      for (auto& k : a) k = e(rng);
      c.add_term(a, test_util::small_rational(rng));
    }
  }
  return x;
}

OneForm random_form(std::mt19937& rng, int n) {
  OneForm a(n);
  const PolyVectorField x = random_field(rng, n);
  a.coeffs = x.coeffs;
  return a;
}

}  // namespace

TEST_CASE("bracket is antisymmetric, satisfies Jacobi and acts as a commutator") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const PolyVectorField x = random_field(rng, 3), y = random_field(rng, 3), z = random_field(rng, 3);
    CHECK(vf_bracket(x, y) == Rational(-1) * vf_bracket(y, x));
    CHECK((vf_bracket(x, vf_bracket(y, z)) + vf_bracket(y, vf_bracket(z, x)) + vf_bracket(z, vf_bracket(x, y)))
              .is_zero());
    const Polynomial f = parse_polynomial("x1^2*x2 + x3 - x1*x3^2", 3);
    CHECK(vf_bracket(x, y).apply(f) == x.apply(y.apply(f)) - y.apply(x.apply(f)));
  }
}

TEST_CASE("Lie derivative is a representation on forms") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const PolyVectorField x = random_field(rng, 3), y = random_field(rng, 3);
    const OneForm a = random_form(rng, 3);
    CHECK(lie_derivative(vf_bracket(x, y), a) ==
          lie_derivative(x, lie_derivative(y, a)) - lie_derivative(y, lie_derivative(x, a)));
    // Cartan's formula against d and contraction: L_X df = d(Xf).
    const Polynomial f = a.coeffs[0];
    CHECK(lie_derivative(x, differential(f)) == differential(x.apply(f)));
  }
}

TEST_CASE("Engel table fields preserve the system and solve completely in low weight") {
  const PfaffSystem e = engel_system();
  for (const auto& f : engel_basis(6)) {
    CAPTURE(f.label);
    CHECK(preserves_pfaff(f.field, e));
    CHECK(engel_weights().degree(f.field) == f.degree);
  }
  // The table is complete in weights -3..0.
  const std::vector<std::size_t> expected{1, 1, 2, 3};
  for (int k = -3; k <= 0; ++k) CHECK(preserving_fields(e, engel_weights(), k).size() == expected[static_cast<std::size_t>(k + 3)]);
  // Weight 1 has four independent preserving fields; the table lists one.
  CHECK(preserving_fields(e, engel_weights(), 1).size() == 4);
}

TEST_CASE("a 1/3 coefficient in X0 breaks preservation") {
  const PolyVectorField x0 = engel_x(0);
  CHECK(x0 == parse_field("x1*d2 + x1^2/2*d3 + x1^3/6*d4", 4));
  CHECK_FALSE(preserves_pfaff(parse_field("x1*d2 + x1^2/2*d3 + x1^3/3*d4", 4), engel_system()));
}

TEST_CASE("contact fields span the distribution; their mirrors preserve it") {
  for (int r = 1; r <= 2; ++r) {
    const int n = 2 * r + 1;
    const PfaffSystem c = contact_system(r);
    for (const auto& f : contact_negative_fields(r))
      if (f.degree == -1) CHECK(contract(c.forms[0], f.field).is_zero());
    for (int i = 1; i <= r; ++i) {
      const std::string p = std::to_string(1 + i), q = std::to_string(1 + r + i);
      CHECK(preserves_pfaff(parse_field("d" + p + " - x" + q + "*d1", n), c));
      CHECK(preserves_pfaff(parse_field("d" + q + " + x" + p + "*d1", n), c));
      // The distribution's own generators are not symmetries.
      CHECK_FALSE(preserves_pfaff(parse_field("d" + p + " + x" + q + "*d1", n), c));
    }
    CHECK(preserves_pfaff(PolyVectorField::partial(n, 0), c));
    CHECK_FALSE(preserves_pfaff(PolyVectorField::partial(n, 1), c));
    CHECK(graded_model(contact_negative_fields(r)).structure_constants().size() == static_cast<std::size_t>(r));
  }
}

TEST_CASE("graded model reproduces the Engel symbol and reports non-closure") {
  std::vector<LabeledField> neg;
  const auto basis = engel_basis(-1);
  for (const char* l : {"d1", "X-1", "D3", "d4"})
    for (const auto& f : basis)
      if (f.label == l) neg.push_back(f);
  const GradedLieAlgebra m = graded_model(neg);
  CHECK(m.structure_constants() == engel_symbol().structure_constants());

  const std::vector<LabeledField> open{{"a", parse_field("d1", 2), -1}, {"b", parse_field("x1*d2", 2), -1}};
  CHECK_THROWS_AS(graded_model(open), NonClosureError);
  try {
    graded_model(open);
  } catch (const NonClosureError& e) {
    CHECK(e.first == "a");
    CHECK(e.second == "b");
  }
  const std::vector<LabeledField> high{{"u", parse_field("x1^2*d1", 1), 1}, {"v", parse_field("x1^3*d1", 1), 2}};
  CHECK_THROWS_AS(graded_model(high), NonClosureError);
  CHECK(graded_model(high, true).structure_constants().empty());
}

TEST_CASE("Pfaff membership needs independent forms") {
  const PfaffSystem p = parse_pfaff("dx1; 2*dx1", 2);
  CHECK_THROWS_AS(in_form_span(parse_form("dx2", 2), p), std::invalid_argument);
  const PfaffSystem q = parse_pfaff("dx3 - x2*dx1", 3);
  CHECK(in_form_span(parse_form("x1*dx3 - x1*x2*dx1", 3), q));
  CHECK_FALSE(in_form_span(parse_form("dx3", 3), q));
}

TEST_CASE("determinant by cofactors") {
  const Polynomial a = parse_polynomial("x1", 2), b = parse_polynomial("x2", 2), one = Polynomial::constant(2, 1);
  CHECK(determinant({{a, b}, {one, one}}) == a - b);
  CHECK(determinant({{a}}) == a);
}
