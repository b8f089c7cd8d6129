#ifndef NCURV_GRADED_LIE_HPP
#define NCURV_GRADED_LIE_HPP

#include "ncurv/exact_linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncurv {

struct BasisElement {
  std::string label;
  int degree = 0;
};

/// Finite-dimensional Z-graded Lie algebra over Q given by a homogeneous basis
/// and structure constants. Only brackets [e_i, e_j] with i < j are stored;
/// the rest follows from antisymmetry. Immutable after construction.
class GradedLieAlgebra {
 public:
  using BracketTable = std::map<std::pair<Index, Index>, Vector>;

  GradedLieAlgebra() = default;

  /// Keys with i > j are folded into (j, i) with a sign flip; i == j must be
  /// zero. Throws std::invalid_argument on bad lengths or when a bracket is
  /// not supported in degree deg(e_i) + deg(e_j).
  GradedLieAlgebra(std::vector<BasisElement> basis, const BracketTable& brackets);

  Index dim() const { return static_cast<Index>(m_basis.size()); }
  const std::vector<BasisElement>& basis() const { return m_basis; }
  int degree(Index i) const { return m_basis.at(static_cast<std::size_t>(i)).degree; }
  const std::string& label(Index i) const { return m_basis.at(static_cast<std::size_t>(i)).label; }
  std::optional<Index> index_of(const std::string& label) const;

  /// Nonzero structure constants, keys (i, j) with i < j.
  const BracketTable& structure_constants() const { return m_brackets; }

  Vector bracket_basis(Index i, Index j) const;
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of y ↦ [x, y].
  Matrix ad(const Vector& x) const;

  /// Distinct degrees, ascending.
  std::vector<int> degrees() const;
  std::vector<Index> indices_of_degree(int d) const;
  Index dim_of_degree(int d) const { return static_cast<Index>(indices_of_degree(d).size()); }
  /// Position of basis element i among the basis elements of its degree.
  Index local_index(Index i) const { return m_local.at(static_cast<std::size_t>(i)); }

  /// max(-deg) over the basis; 0 when no negative degree occurs.
  int depth() const;
  bool is_negatively_graded() const;
  /// Iterated brackets of the degree -1 part span the whole algebra.
  bool generated_in_degree_minus_one() const;

  Vector unit(Index i) const;

 private:
  std::vector<BasisElement> m_basis;
  std::vector<Index> m_local;
  BracketTable m_brackets;
};

/// Basis triple on which the Jacobi identity fails, with the nonzero
/// value of [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]].
struct JacobiViolation {
  Index i = 0, j = 0, k = 0;
  Vector jacobiator;
};

std::vector<JacobiViolation> check_jacobi(const GradedLieAlgebra& g);

/// A space of derivations of `parent` shifting degrees by `degree`, each a
/// matrix acting on coordinate columns: column c is D(e_c).
struct DerivationSubalgebra {
  GradedLieAlgebra parent;
  int degree = 0;
  std::vector<Matrix> basis;
  std::vector<std::string> labels;

  Index dim() const { return static_cast<Index>(basis.size()); }
};

/// D[x, y] = [Dx, y] + [x, Dy] on all basis pairs and D maps g_a into
/// g_{a+shift}.
bool is_derivation(const GradedLieAlgebra& g, const Matrix& d, int shift);

/// All derivations of degree k: the kernel of the linearized Leibniz system.
/// For k = 0 on a symbol algebra this is the default g0 = (der g-)_0.
DerivationSubalgebra derivations_of_degree(const GradedLieAlgebra& g, int k);

/// Checks that `sub` consists of degree-0 derivations of its parent that are
/// linearly independent and closed under commutator. Throws
/// std::invalid_argument describing the first failure.
void validate_degree_zero_subalgebra(const DerivationSubalgebra& sub);

/// The subalgebra o(n) of gl(n) (antisymmetric matrices, E_ij - E_ji for
/// i < j) acting on an abelian algebra concentrated in degree -1.
DerivationSubalgebra orthogonal_subalgebra(const GradedLieAlgebra& abelian);

/// Span of the given matrices as a derivation space, labels supplied by the
/// caller. Matrices are kept as given (not re-echelonized).
DerivationSubalgebra make_derivation_subalgebra(const GradedLieAlgebra& g, std::vector<Matrix> basis,
                                                std::vector<std::string> labels, int degree = 0);

/// Builtin algebras:
///   abelian(n)      n generators x1..xn in degree -1, zero bracket
///   heisenberg(r)   p1..pr, q1..qr in degree -1, z in degree -2, [p_i, q_i] = z
///   engel_symbol    y1, y2 (deg -1), y3 (deg -2), y4 (deg -3),
///                   [y1, y2] = y3, [y1, y3] = y4
GradedLieAlgebra abelian(int n);
GradedLieAlgebra heisenberg(int r);
GradedLieAlgebra engel_symbol();

/// Name-based lookup: "abelian:N", "heisenberg:R" (also "heis:R"),
/// "engel" / "engel_symbol". Throws std::invalid_argument otherwise.
GradedLieAlgebra builtin(const std::string& spec);
GradedLieAlgebra builtin(const std::string& name, int param);

/// x written in basis labels, e.g. "y3" or "2*y1-1/2*y2".
std::string format_element(const GradedLieAlgebra& g, const Vector& x);

}  // namespace ncurv

#endif  // NCURV_GRADED_LIE_HPP
