#include "ncurv/distribution.hpp"
#include "ncurv/vf_calculus.hpp"

#include <doctest.h>

using namespace ncurv;

namespace {

Point pt(std::initializer_list<int> xs) {
  Point p;
  for (int x : xs) p.push_back(Rational(x));
  return p;
}

}  // namespace

TEST_CASE("Engel distribution from its Pfaff system") {
  const Distribution d = Distribution::from_pfaff(engel_system());
  REQUIRE(d.rank() == 2);
  CHECK(d.spanning_fields()[0] == parse_field("d1 + x2*d3 + x3*d4", 4));
  CHECK(d.spanning_fields()[1] == parse_field("d2", 4));
  for (const auto& y : d.spanning_fields())
    for (const auto& a : engel_system().forms) CHECK(contract(a, y).is_zero());
  for (const Point& x : {origin(4), pt({1, 1, 1, 1})}) {
    const GrowthVector g = flag_at_point(d, x);
    CHECK(g.dims == std::vector<int>{2, 3, 4});
    CHECK(g.depth() == 3);
    CHECK(g.completely_nonholonomic());
    CHECK(g.nonholonomic());
  }
  CHECK(regularity_scan(d, {origin(4), pt({1, 1, 1, 1}), pt({-2, 3, 0, 5})}).regular());
}

TEST_CASE("contact distributions have Heisenberg symbols") {
  for (int r = 1; r <= 2; ++r) {
    const Distribution d = Distribution::from_pfaff(contact_system(r));
    const GrowthVector g = flag_at_point(d, origin(2 * r + 1));
    CHECK(g.dims == std::vector<int>{2 * r, 2 * r + 1});
    const GradedLieAlgebra s = symbol_algebra(d, origin(2 * r + 1));
    CHECK(s.structure_constants() == heisenberg(r).structure_constants());
    CHECK(check_jacobi(s).empty());
    CHECK(s.generated_in_degree_minus_one());
  }
  // The three-variable contact form with the opposite sign convention.
  const Distribution c = Distribution::from_pfaff(parse_pfaff("dx1 + x2*dx3 - x3*dx2"));
  CHECK(flag_at_point(c, origin(3)).dims == std::vector<int>{2, 3});
}

TEST_CASE("integrable distributions") {
  const Distribution d(parse_fields("d1; d2", 4));
  const GrowthVector g = flag_at_point(d, origin(4));
  CHECK(g.dims == std::vector<int>{2});
  CHECK_FALSE(g.nonholonomic());
  CHECK_FALSE(g.completely_nonholonomic());
  const GradedLieAlgebra s = symbol_algebra(d, origin(4));
  CHECK(s.dim() == 2);
  CHECK(s.structure_constants().empty());
  CHECK(regularity_scan(d, {origin(4)}).regular());
}

TEST_CASE("Martinet system is flagged irregular") {
  const Distribution d = Distribution::from_pfaff(parse_pfaff("dx3 - x2^2*dx1"));
  const GrowthVector at0 = flag_at_point(d, origin(3));
  const GrowthVector at1 = flag_at_point(d, pt({0, 1, 0}));
  CHECK(at0.dims == std::vector<int>{2});
  CHECK(at0.level_dims == std::vector<int>{2, 2, 3});
  CHECK(at0.stall_then_growth());
  CHECK(at1.dims == std::vector<int>{2, 3});
  const RegularityReport r = regularity_scan(d, {pt({0, 1, 0}), origin(3)});
  CHECK_FALSE(r.regular());
  CHECK(r.disagreements == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(symbol_algebra(d, origin(3)), std::runtime_error);
}

TEST_CASE("errors") {
  const Distribution d(parse_fields("d1; x1*d2", 2));
  CHECK_THROWS_AS(flag_at_point(d, origin(2)), std::invalid_argument);
  CHECK_THROWS_AS(flag_at_point(d, origin(3)), std::invalid_argument);
  CHECK_THROWS_AS(regularity_scan(d, {}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::from_pfaff(parse_pfaff("dx1; dx2", 2)), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::from_pfaff(parse_pfaff("dx1; 2*dx1", 3)), std::invalid_argument);
}

TEST_CASE("non-constant pivot minors keep the fields polynomial") {
  // x1*dx3 - dx2: the first column with a constant minor is x2.
  const Distribution d = Distribution::from_pfaff(parse_pfaff("x1*dx3 - dx2", 3));
  for (const auto& y : d.spanning_fields()) CHECK(contract(parse_form("x1*dx3 - dx2", 3), y).is_zero());
  CHECK(d.rank() == 2);
  // x1*dx2 - x2*dx1 has no constant minor; Cramer's fields are scaled by x1.
  const Distribution e = Distribution::from_pfaff(parse_pfaff("x1*dx2 - x2*dx1", 3));
  for (const auto& y : e.spanning_fields()) CHECK(contract(parse_form("x1*dx2 - x2*dx1", 3), y).is_zero());
}
