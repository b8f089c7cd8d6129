#ifndef NCURV_EXACT_LINALG_HPP
#define NCURV_EXACT_LINALG_HPP

// Exact dense linear algebra over a field scalar (Rational in practice).
// Everything here is a pure function of its arguments.

#include "ncurv/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncurv {

using Index = Eigen::Index;

/// Reduced row-echelon form: `rows` holds only the nonzero rows (rank many),
/// `pivots[i]` is the pivot column of row i, strictly increasing.
template <typename Scalar>
struct Echelon {
  MatrixX<Scalar> rows;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination with exact pivoting. Row operations skip zero
/// multipliers and only touch the nonzero columns of the pivot row, which
/// keeps the sparse constraint systems built elsewhere cheap.
template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> work = m;
  const Index nrows = work.rows();
  const Index ncols = work.cols();
  std::vector<Index> pivots;
  std::vector<Index> support;
  Index r = 0;
  for (Index c = 0; c < ncols && r < nrows; ++c) {
    Index p = r;
    while (p < nrows && is_zero(work(p, c))) ++p;
    if (p == nrows) continue;
    if (p != r) work.row(p).swap(work.row(r));

    const Scalar inv = Scalar(1) / work(r, c);
    support.clear();
    for (Index j = c; j < ncols; ++j) {
      if (!is_zero(work(r, j))) {
        work(r, j) *= inv;
        support.push_back(j);
      }
    }
    for (Index i = 0; i < nrows; ++i) {
      if (i == r || is_zero(work(i, c))) continue;
      const Scalar f = work(i, c);
      for (Index j : support) work(i, j) -= f * work(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {work.topRows(r), std::move(pivots)};
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return reduced_row_echelon(m).rank();
}

/// A linear subspace of Scalar^n stored in canonical form: the basis rows are
/// the reduced row-echelon form of any spanning set, so equal subspaces
/// compare equal entry by entry.
template <typename Scalar>
class BasicSubspace {
 public:
  using MatrixType = MatrixX<Scalar>;
  using VectorType = VectorX<Scalar>;

  BasicSubspace() = default;

  static BasicSubspace zero(Index ambient) {
    BasicSubspace s;
    s.m_ambient = ambient;
    s.m_basis = MatrixType(0, ambient);
    return s;
  }

  static BasicSubspace full(Index ambient) {
    return span(MatrixType::Identity(ambient, ambient));
  }

  /// Span of the rows of `generators`.
  template <typename Derived>
  static BasicSubspace span(const Eigen::MatrixBase<Derived>& generators) {
    BasicSubspace s;
    s.m_ambient = generators.cols();
    auto e = reduced_row_echelon(generators);
    s.m_basis = std::move(e.rows);
    s.m_pivots = std::move(e.pivots);
    return s;
  }

  Index ambient_dim() const { return m_ambient; }
  Index dim() const { return m_basis.rows(); }
  bool is_zero() const { return dim() == 0; }
  const MatrixType& basis() const { return m_basis; }
  const std::vector<Index>& pivots() const { return m_pivots; }

  /// Coordinates of v with respect to basis(); exact because the basis is in
  /// reduced echelon form (the coordinates are v's pivot entries).
  /// Throws std::domain_error when v is not in the subspace.
  VectorType coordinates(const VectorType& v) const {
    auto c = try_coordinates(v);
    if (!c) throw std::domain_error("vector is not in the subspace");
    return *c;
  }

  bool contains(const VectorType& v) const { return try_coordinates(v).has_value(); }

  /// Residual of v after subtracting its projection along pivot columns;
  /// zero exactly when v lies in the subspace.
  VectorType residual(const VectorType& v) const {
    check_length(v);
    VectorType r = v;
    for (Index i = 0; i < dim(); ++i) {
      const Scalar f = v(m_pivots[i]);
      if (!ncurv::is_zero(f)) r -= f * m_basis.row(i).transpose();
    }
    return r;
  }

  /// {w : <w, v> = 0 for all v in this subspace}.
  BasicSubspace annihilator() const;

  bool contains(const BasicSubspace& other) const {
    if (other.ambient_dim() != m_ambient) throw std::invalid_argument("ambient dimension mismatch");
    for (Index i = 0; i < other.dim(); ++i)
      if (!contains(VectorType(other.basis().row(i).transpose()))) return false;
    return true;
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.m_ambient == b.m_ambient && a.m_pivots == b.m_pivots && a.m_basis == b.m_basis;
  }

 private:
  void check_length(const VectorType& v) const {
    if (v.size() != m_ambient)
      throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                  " does not match ambient dimension " + std::to_string(m_ambient));
  }

  std::optional<VectorType> try_coordinates(const VectorType& v) const {
    VectorType r = residual(v);
    for (Index j = 0; j < r.size(); ++j)
      if (!ncurv::is_zero(r(j))) return std::nullopt;
    VectorType c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = v(m_pivots[i]);
    return c;
  }

  Index m_ambient = 0;
  MatrixType m_basis = MatrixType(0, 0);
  std::vector<Index> m_pivots;
};

using Subspace = BasicSubspace<Rational>;

/// Canonical basis of {v : m v = 0}. Its dimension is cols - rank(m).
template <typename Derived>
BasicSubspace<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.cols();
  auto e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  MatrixX<Scalar> gens = MatrixX<Scalar>::Zero(n - e.rank(), n);
  Index g = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    gens(g, f) = Scalar(1);
    for (Index i = 0; i < e.rank(); ++i) gens(g, e.pivots[i]) = -e.rows(i, f);
    ++g;
  }
  return BasicSubspace<Scalar>::span(gens);
}

/// Column space of m, as a subspace of Scalar^rows.
template <typename Derived>
BasicSubspace<typename Derived::Scalar> image(const Eigen::MatrixBase<Derived>& m) {
  return BasicSubspace<typename Derived::Scalar>::span(m.transpose());
}

template <typename Scalar>
BasicSubspace<Scalar> BasicSubspace<Scalar>::annihilator() const {
  if (dim() == 0) return full(m_ambient);
  return kernel_basis(m_basis);
}

/// Rows of a followed by rows of b (either may be empty).
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> vstack(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column count mismatch");
  MatrixX<typename DerivedA::Scalar> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

template <typename Scalar>
BasicSubspace<Scalar> sum(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  return BasicSubspace<Scalar>::span(vstack(a.basis(), b.basis()));
}

/// a ∩ b, computed as the common kernel of both annihilators.
template <typename Scalar>
BasicSubspace<Scalar> intersect(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  const auto ann_a = a.annihilator();
  const auto ann_b = b.annihilator();
  return kernel_basis(vstack(ann_a.basis(), ann_b.basis()));
}

/// {v : m v ∈ target}.
template <typename Derived>
BasicSubspace<typename Derived::Scalar> preimage_membership(
    const Eigen::MatrixBase<Derived>& m, const BasicSubspace<typename Derived::Scalar>& target) {
  if (m.rows() != target.ambient_dim())
    throw std::invalid_argument("matrix has " + std::to_string(m.rows()) +
                                " rows but target ambient dimension is " +
                                std::to_string(target.ambient_dim()));
  const auto ann = target.annihilator();
  MatrixX<typename Derived::Scalar> constraints = ann.basis() * m;
  return kernel_basis(constraints);
}

/// A solution of m x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
template <typename Derived, typename DerivedB>
std::optional<VectorX<typename Derived::Scalar>> solve(const Eigen::MatrixBase<Derived>& m,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Derived::Scalar;
  if (b.rows() != m.rows() || b.cols() != 1) throw std::invalid_argument("solve: right-hand side has the wrong shape");
  const Index n = m.cols();
  MatrixX<Scalar> aug(m.rows(), n + 1);
  aug.leftCols(n) = m;
  aug.col(n) = b;
  auto e = reduced_row_echelon(aug);
  if (e.rank() > 0 && e.pivots.back() == n) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(n);
  for (Index i = 0; i < e.rank(); ++i) x(e.pivots[static_cast<std::size_t>(i)]) = e.rows(i, n);
  return x;
}

/// Exact inverse of a square matrix; throws std::domain_error when singular.
template <typename Derived>
MatrixX<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  auto e = reduced_row_echelon(aug);
  if (e.rank() < n || (n > 0 && e.pivots[static_cast<std::size_t>(n - 1)] != n - 1))
    throw std::domain_error("matrix is singular");
  return e.rows.rightCols(n);
}

/// Rows of `outer`'s canonical basis, taken greedily in order, that extend
/// `inner` to `outer`. Deterministic; requires inner ⊆ outer.
template <typename Scalar>
MatrixX<Scalar> complement_basis(const BasicSubspace<Scalar>& inner, const BasicSubspace<Scalar>& outer) {
  if (!outer.contains(inner)) throw std::invalid_argument("complement_basis: inner is not contained in outer");
  std::vector<Index> chosen;
  BasicSubspace<Scalar> acc = inner;
  for (Index i = 0; i < outer.dim() && acc.dim() < outer.dim(); ++i) {
    VectorX<Scalar> v = outer.basis().row(i).transpose();
    if (acc.contains(v)) continue;
    chosen.push_back(i);
    acc = BasicSubspace<Scalar>::span(vstack(acc.basis(), v.transpose()));
  }
  MatrixX<Scalar> out(static_cast<Index>(chosen.size()), outer.ambient_dim());
  for (std::size_t k = 0; k < chosen.size(); ++k) out.row(static_cast<Index>(k)) = outer.basis().row(chosen[k]);
  return out;
}

}  // namespace ncurv

#endif  // NCURV_EXACT_LINALG_HPP
