#ifndef NCURV_PROLONGATION_HPP
#define NCURV_PROLONGATION_HPP

#include "ncurv/graded_lie.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ncurv {

/// One graded piece g_m of a prolong tower.
///
/// For m < 0 elements are coordinate vectors over the g- basis elements of
/// degree m. For m >= 0 an element is stored by its restriction to g-: a
/// tuple of values X(b) in g_{deg b + m}, one block per g- basis element b,
/// laid out in g- basis order ("ambient" coordinates of degree m).
struct TowerComponent {
  int degree = 0;
  std::vector<std::string> labels;
  /// m >= 0: rows are the basis elements in ambient coordinates.
  Matrix basis;
  /// m >= 0: canonical span of `basis`.
  Subspace span;
  /// m >= 0: c = coordinate_map * v recovers basis coordinates of v ∈ span.
  Matrix coordinate_map;
  /// m >= 0: pivot columns used by coordinate_map.
  std::vector<Index> coordinate_columns;
  /// m >= 0: basis is already the canonical echelon basis of span, so
  /// coordinate_map is the identity.
  bool echelon = false;

  Index dim() const { return static_cast<Index>(labels.size()); }
};

enum class ProlongMethod {
  shchepochkina,  ///< derivation (Leibniz) characterization, any depth
  cartan,         ///< symmetry of X(v1)(v2, ...), depth 1 abelian only
};

struct JacobiCheck {
  /// Triples examined: all homogeneous basis triples whose pairwise and total
  /// bracket degrees stay within [-d, cap].
  std::size_t triples_checked = 0;
  std::vector<std::string> violations;
  int verified_max_degree = 0;

  bool ok() const { return violations.empty(); }
};

/// The truncated prolong g_{-d} ⊕ ... ⊕ g_0 ⊕ ... ⊕ g_cap with all brackets
/// landing in degree ≤ cap tabulated. Immutable once built.
class ProlongTower {
 public:
  const GradedLieAlgebra& negative() const { return m_negative; }
  const DerivationSubalgebra& g0() const { return m_g0; }
  int depth() const { return m_depth; }
  int min_degree() const { return -m_depth; }
  int cap() const { return m_cap; }
  ProlongMethod method() const { return m_method; }

  bool in_range(int m) const { return m >= -m_depth && m <= m_cap; }
  Index dim(int m) const;
  /// Dimensions for degrees -d..cap.
  std::vector<Index> dims() const;
  const TowerComponent& component(int m) const;
  const std::vector<std::string>& labels(int m) const { return component(m).labels; }

  /// Ambient layout of degree m >= 0 (blocks per g- basis element).
  Index ambient_dim(int m) const;
  Index block_offset(int m, Index b) const;
  Index block_size(int m, Index b) const { return dim(m + m_negative.degree(b)); }

  /// Action X ↦ X(b) of g_m (m >= 0) on the g- basis element b, a
  /// dim(m + deg b) × dim(m) matrix.
  const Matrix& action(int m, Index b) const;

  /// Matrix of y ↦ [e_i, y] from g_b to g_{a+b}, e_i the i-th basis element
  /// of g_a. Has zero rows when a + b < -d; throws std::out_of_range when
  /// a + b > cap or a degree is outside the tower.
  const Matrix& ad(int a, Index i, int b) const;

  /// Bracket of homogeneous elements x ∈ g_a, y ∈ g_b, valued in g_{a+b}.
  Vector bracket(int a, const Vector& x, int b, const Vector& y) const;

  /// Ambient vector (m >= 0) → coordinates in g_m; throws std::domain_error
  /// when the vector is not in g_m.
  Vector coordinates(int m, const Vector& ambient) const;
  /// Coordinates in g_m → ambient vector (m >= 0).
  Vector ambient(int m, const Vector& coords) const;

  std::string format(int m, const Vector& coords) const;

  const JacobiCheck& jacobi() const { return m_jacobi; }

 private:
  friend ProlongTower build_tower(const GradedLieAlgebra&, const DerivationSubalgebra&, int, ProlongMethod, bool);
  friend class TowerBuilder;

  GradedLieAlgebra m_negative;
  DerivationSubalgebra m_g0;
  int m_depth = 0;
  int m_cap = -1;
  ProlongMethod m_method = ProlongMethod::shchepochkina;
  std::map<int, TowerComponent> m_components;
  std::map<std::pair<int, int>, std::vector<Matrix>> m_ad;
  std::map<std::pair<int, Index>, Matrix> m_action;
  JacobiCheck m_jacobi;
};

/// g_k computed from g_{<k} by the Leibniz characterization
/// X[u, v] = [Xu, v] + [u, Xv], u, v ∈ g-, returned as a subspace of the
/// ambient coordinates of degree k. Requires 1 <= k <= tower.cap() + 1.
Subspace shchepochkina_prolong_step(const ProlongTower& tower, int k);

/// g_k = {X ∈ Hom(g_{-1}, g_{k-1}) : X(v1)(v2, v3, ...) = X(v2)(v1, v3, ...)},
/// with g_{k-1} evaluated as a multilinear map all the way down to g_{-1}.
/// Requires an abelian g- concentrated in degree -1 and 1 <= k <= cap + 1.
Subspace cartan_prolong_step(const ProlongTower& tower, int k);

/// Builds components through degree `cap`, tabulates brackets and, when
/// `verify_jacobi` is set, checks Jacobi on the truncation (the result is
/// available through ProlongTower::jacobi()). Throws std::invalid_argument
/// when g0 is not a subalgebra of (der g-)_0, g- is not negatively graded,
/// cap < 0, or the Cartan method is requested for depth > 1.
ProlongTower build_tower(const GradedLieAlgebra& g_minus, const DerivationSubalgebra& g0, int cap,
                         ProlongMethod method = ProlongMethod::shchepochkina, bool verify_jacobi = true);

/// build_tower with g0 = (der g-)_0.
ProlongTower build_tower(const GradedLieAlgebra& g_minus, int cap);

JacobiCheck check_tower_jacobi(const ProlongTower& tower);

/// The truncated subalgebra g- ⊕ h_0 ⊕ ... ⊕ h_cap of `tower`, where the rows
/// of pieces[m] give h_m in coordinates of g_m (a missing degree keeps all of
/// g_m). Throws std::invalid_argument when the pieces are not stable under
/// g- or not closed under bracket within the truncation.
ProlongTower restrict_tower(const ProlongTower& tower, const std::map<int, Matrix>& pieces,
                            const std::map<int, std::vector<std::string>>& labels = {});

/// Per-degree piece of a quotient h/[h, h] within the truncation.
struct QuotientPiece {
  int degree = 0;
  Index dim_space = 0;
  Index dim_commutator = 0;
  /// Canonical complement of the commutator, in coordinates of g_degree.
  Matrix classes;
  std::vector<std::string> class_labels;

  Index dim_quotient() const { return dim_space - dim_commutator; }
};

struct DerivedSeriesReport {
  int min_degree = 0;
  /// g/[g, g] is certified for degrees ≤ this (cap - d).
  int abelianization_max_degree = 0;
  /// g⁽¹⁾/[g⁽¹⁾, g⁽¹⁾] is certified for degrees ≤ this (cap - 2d).
  int second_max_degree = 0;
  std::vector<QuotientPiece> abelianization;
  std::vector<QuotientPiece> second;
  /// g⁽¹⁾ = [g, g] in the certified range, per degree, coordinates of g_m.
  std::map<int, Subspace> derived;

  Index abelianization_dim() const;
  Index second_dim() const;
};

/// Requires cap >= 3 and cap >= d so that both quotients have a nonempty
/// certified range; throws std::invalid_argument otherwise.
DerivedSeriesReport derived_series_report(const ProlongTower& tower);

}  // namespace ncurv

#endif  // NCURV_PROLONGATION_HPP
