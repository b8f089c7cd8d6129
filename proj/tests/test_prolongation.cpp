#include "ncurv/prolongation.hpp"

#include <doctest.h>

using namespace ncurv;

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Homogeneous polynomial fields of degree k + 1 in n variables.
long long vect_dim(int n, int k) { return n * binomial(n + k, k + 1); }

// Contact fields on 2r+1 variables are given by generating functions; the
// degree-k piece has the weighted-degree k+2 monomials in p, q (weight 1) and
// t (weight 2).
long long contact_dim(int r, int k) {
  long long total = 0;
  for (int c = 0; 2 * c <= k + 2; ++c) total += binomial(k + 2 - 2 * c + 2 * r - 1, 2 * r - 1);
  return total;
}

}  // namespace

TEST_CASE("Cartan prolong of gl(n) is the polynomial vector fields") {
  for (int n = 1; n <= 3; ++n) {
    const GradedLieAlgebra a = abelian(n);
    const ProlongTower t = build_tower(a, derivations_of_degree(a, 0), 3);
    CHECK(t.jacobi().ok());
    for (int k = -1; k <= 3; ++k) CHECK(t.dim(k) == vect_dim(n, k));
  }
}

TEST_CASE("o(n) has no first prolong") {
  for (int n = 2; n <= 4; ++n) {
    const GradedLieAlgebra a = abelian(n);
    const ProlongTower t = build_tower(a, orthogonal_subalgebra(a), 2);
    CHECK(t.dim(0) == n * (n - 1) / 2);
    CHECK(t.dim(1) == 0);
    CHECK(t.dim(2) == 0);
  }
}

TEST_CASE("contact prolong matches generating-function counts") {
  for (int r = 1; r <= 2; ++r) {
    const GradedLieAlgebra h = heisenberg(r);
    const int cap = r == 1 ? 5 : 2;
    const ProlongTower t = build_tower(h, cap);
    CHECK(t.jacobi().ok());
    for (int k = -2; k <= cap; ++k) {
      CAPTURE(r);
      CAPTURE(k);
      CHECK(t.dim(k) == contact_dim(r, k));
    }
  }
}

TEST_CASE("Cartan and Shchepochkina steps agree on (abelian(2), gl(2))") {
  const GradedLieAlgebra a = abelian(2);
  const ProlongTower t = build_tower(a, derivations_of_degree(a, 0), 2);
  for (int k = 1; k <= 3; ++k) CHECK(cartan_prolong_step(t, k) == shchepochkina_prolong_step(t, k));
  const ProlongTower c = build_tower(a, derivations_of_degree(a, 0), 3, ProlongMethod::cartan);
  CHECK(c.dims() == build_tower(a, 3).dims());
  CHECK_THROWS_AS(cartan_prolong_step(build_tower(heisenberg(1), 1), 1), std::invalid_argument);
  CHECK_THROWS_AS(shchepochkina_prolong_step(t, 4), std::invalid_argument);
}

TEST_CASE("vect(1) is perfect in the certified range") {
  // x d = [d, x^2 d]/2, so the grading element has no class in g/[g,g].
  const GradedLieAlgebra a = abelian(1);
  const ProlongTower t = build_tower(a, derivations_of_degree(a, 0), 3);
  const DerivedSeriesReport d = derived_series_report(t);
  CHECK(d.abelianization_max_degree == 2);
  CHECK(d.abelianization_dim() == 0);
}

TEST_CASE("Engel prolong with the full degree-zero derivations") {
  const ProlongTower t = build_tower(engel_symbol(), 5);
  CHECK(t.jacobi().ok());
  CHECK(t.dims() == std::vector<Index>{1, 1, 2, 3, 4, 5, 7, 8, 10});
  const DerivedSeriesReport d = derived_series_report(t);
  CHECK(d.abelianization_max_degree == 2);
  CHECK(d.second_max_degree == -1);
  CHECK(d.abelianization_dim() == 0);
  CHECK(d.second_dim() == 0);
}

TEST_CASE("tower brackets are consistent with the action on g-") {
  const ProlongTower t = build_tower(heisenberg(1), 3);
  // [X, v] = X(v) for X in g_m, v in g-.
  for (int m = 0; m <= 3; ++m)
    for (Index b = 0; b < t.negative().dim(); ++b) {
      const int db = t.negative().degree(b);
      const int target = m + db;
      if (target > t.cap()) continue;
      for (Index i = 0; i < t.dim(m); ++i) {
        Vector x = Vector::Zero(t.dim(m));
        x(i) = 1;
        Vector v = Vector::Zero(t.dim(db));
        v(t.negative().local_index(b)) = 1;
        CHECK(t.bracket(m, x, db, v) == t.action(m, b).col(i));
        CHECK(t.bracket(db, v, m, x) == -t.action(m, b).col(i));
      }
    }
  CHECK_THROWS_AS(t.ad(2, 0, 2), std::out_of_range);
}

TEST_CASE("restriction to a subalgebra") {
  const ProlongTower t = build_tower(abelian(2), 2);
  // g- alone.
  const ProlongTower zero = restrict_tower(t, {{0, Matrix(0, 4)}, {1, Matrix(0, t.dim(1))}, {2, Matrix(0, t.dim(2))}});
  CHECK(zero.dims() == std::vector<Index>{2, 0, 0, 0});
  CHECK(zero.jacobi().ok());
  // Keeping g1 without the g0 it maps into is not stable under g-.
  CHECK_THROWS_AS(restrict_tower(t, {{0, Matrix(0, 4)}}), std::invalid_argument);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(build_tower(abelian(2), -1), std::invalid_argument);
  const GradedLieAlgebra bad({{"a", 1}}, {});
  CHECK_THROWS_AS(build_tower(bad, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_tower(heisenberg(1), orthogonal_subalgebra(abelian(2)), 1), std::invalid_argument);
  CHECK_THROWS_AS(derived_series_report(build_tower(engel_symbol(), 2)), std::invalid_argument);
}
