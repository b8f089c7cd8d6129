#include "ncurv/prolongation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncurv {

namespace {

Matrix stack_rows(const std::vector<Vector>& rows, Index cols) {
  Matrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

// y += c * column j of m, skipping the work when c is zero.
void axpy_column(Vector& y, const Rational& c, const Matrix& m, Index j) {
  if (c.is_zero()) return;
  for (Index r = 0; r < m.rows(); ++r)
    if (!m(r, j).is_zero()) y(r) += c * m(r, j);
}

Vector apply_sparse(const Matrix& m, const Vector& x) {
  Vector y = Vector::Zero(m.rows());
  for (Index j = 0; j < x.size(); ++j) axpy_column(y, x(j), m, j);
  return y;
}

}  // namespace

// Mutating access to a tower under construction.
class TowerBuilder {
 public:
  static void init(ProlongTower& t, const GradedLieAlgebra& g, const DerivationSubalgebra& g0, ProlongMethod method) {
    t.m_negative = g;
    t.m_g0 = g0;
    t.m_depth = g.depth();
    t.m_method = method;
    t.m_cap = -1;
    for (int m = -t.m_depth; m < 0; ++m) {
      TowerComponent c;
      c.degree = m;
      for (Index i : g.indices_of_degree(m)) c.labels.push_back(g.label(i));
      t.m_components[m] = std::move(c);
    }
    for (int a = -t.m_depth; a < 0; ++a)
      for (int b = -t.m_depth; b < 0; ++b) t.m_ad[{a, b}] = negative_table(t, a, b);
  }

  static void append(ProlongTower& t, int m, const Matrix& rows, std::vector<std::string> labels) {
    TowerComponent c;
    c.degree = m;
    c.labels = std::move(labels);
    c.basis = rows;
    c.span = Subspace::span(rows);
    if (c.span.dim() != rows.rows()) throw std::logic_error("tower component basis is dependent");
    c.coordinate_columns = c.span.pivots();
    c.echelon = c.span.basis() == rows;
    Matrix square(rows.rows(), rows.rows());
    for (Index j = 0; j < rows.rows(); ++j) square.col(j) = rows.col(c.coordinate_columns[static_cast<std::size_t>(j)]);
    c.coordinate_map = inverse(square).transpose();
    for (Index b = 0; b < t.m_negative.dim(); ++b)
      t.m_action[{m, b}] = c.basis.block(0, t.block_offset(m, b), c.basis.rows(), t.block_size(m, b)).transpose();
    t.m_components[m] = std::move(c);
    t.m_cap = m;

    const GradedLieAlgebra& g = t.m_negative;
    for (int a = -t.m_depth; a < 0; ++a) {
      // [v, X] = -X(v) for v ∈ g_a, X ∈ g_m.
      std::vector<Matrix> left;
      for (Index v : g.indices_of_degree(a)) left.push_back(-t.action(m, v));
      t.m_ad[{a, m}] = std::move(left);
      // [X, v] = X(v), column by column over the g_a basis.
      std::vector<Matrix> right;
      const auto vs = g.indices_of_degree(a);
      for (Index i = 0; i < t.dim(m); ++i) {
        Matrix col(t.dim(m + a), static_cast<Index>(vs.size()));
        for (std::size_t j = 0; j < vs.size(); ++j) col.col(static_cast<Index>(j)) = t.action(m, vs[j]).col(i);
        right.push_back(std::move(col));
      }
      t.m_ad[{m, a}] = std::move(right);
    }
  }

  // Brackets among non-negative components, by increasing total degree so
  // that every bracket needed on the right-hand side is already tabulated.
  static void tabulate_nonnegative(ProlongTower& t) {
    const GradedLieAlgebra& g = t.m_negative;
    for (int total = 0; total <= t.m_cap; ++total)
      for (int a = 0; a <= total; ++a) {
        const int b = total - a;
        std::vector<Matrix> table;
        for (Index i = 0; i < t.dim(a); ++i) {
          Matrix out(t.dim(total), t.dim(b));
          for (Index j = 0; j < t.dim(b); ++j) {
            // [A, B](v) = [A, [B, v]] - [B, [A, v]] for each g- basis v.
            Vector amb = Vector::Zero(t.ambient_dim(total));
            for (Index v = 0; v < g.dim(); ++v) {
              const int dv = g.degree(v);
              if (total + dv < -t.m_depth) continue;
              Vector val = Vector::Zero(t.dim(total + dv));
              if (b + dv >= -t.m_depth) val += apply_sparse(t.ad(a, i, b + dv), t.action(b, v).col(j));
              if (a + dv >= -t.m_depth) val -= apply_sparse(t.ad(b, j, a + dv), t.action(a, v).col(i));
              amb.segment(t.block_offset(total, v), val.size()) = val;
            }
            out.col(j) = t.coordinates(total, amb);
          }
          table.push_back(std::move(out));
        }
        t.m_ad[{a, b}] = std::move(table);
      }
  }

  static void set_jacobi(ProlongTower& t, JacobiCheck check) { t.m_jacobi = std::move(check); }

 private:
  static std::vector<Matrix> negative_table(const ProlongTower& t, int a, int b) {
    const GradedLieAlgebra& g = t.m_negative;
    std::vector<Matrix> out;
    const auto as = g.indices_of_degree(a);
    const auto bs = g.indices_of_degree(b);
    const int c = a + b;
    const auto cs = c >= -t.m_depth ? g.indices_of_degree(c) : std::vector<Index>{};
    for (Index i : as) {
      Matrix m = Matrix::Zero(static_cast<Index>(cs.size()), static_cast<Index>(bs.size()));
      for (std::size_t j = 0; j < bs.size(); ++j) {
        const Vector br = g.bracket_basis(i, bs[j]);
        for (std::size_t k = 0; k < cs.size(); ++k) m(static_cast<Index>(k), static_cast<Index>(j)) = br(cs[k]);
      }
      out.push_back(std::move(m));
    }
    return out;
  }
};

Index ProlongTower::dim(int m) const {
  auto it = m_components.find(m);
  return it == m_components.end() ? 0 : it->second.dim();
}

std::vector<Index> ProlongTower::dims() const {
  std::vector<Index> out;
  for (int m = -m_depth; m <= m_cap; ++m) out.push_back(dim(m));
  return out;
}

const TowerComponent& ProlongTower::component(int m) const {
  auto it = m_components.find(m);
  if (it == m_components.end())
    throw std::out_of_range("degree " + std::to_string(m) + " is outside the tower [" + std::to_string(-m_depth) +
                            ", " + std::to_string(m_cap) + "]");
  return it->second;
}

Index ProlongTower::ambient_dim(int m) const {
  Index n = 0;
  for (Index b = 0; b < m_negative.dim(); ++b) n += block_size(m, b);
  return n;
}

Index ProlongTower::block_offset(int m, Index b) const {
  Index off = 0;
  for (Index c = 0; c < b; ++c) off += block_size(m, c);
  return off;
}

const Matrix& ProlongTower::action(int m, Index b) const {
  if (m < 0) throw std::invalid_argument("action is defined for non-negative degrees only");
  component(m);
  return m_action.at({m, b});
}

const Matrix& ProlongTower::ad(int a, Index i, int b) const {
  auto it = m_ad.find({a, b});
  if (it == m_ad.end())
    throw std::out_of_range("bracket of degrees " + std::to_string(a) + " and " + std::to_string(b) +
                            " is not tabulated (cap " + std::to_string(m_cap) + ")");
  return it->second.at(static_cast<std::size_t>(i));
}

Vector ProlongTower::bracket(int a, const Vector& x, int b, const Vector& y) const {
  if (x.size() != dim(a) || y.size() != dim(b)) throw std::invalid_argument("bracket: coordinate length mismatch");
  if (a + b < -m_depth) return Vector::Zero(0);
  Vector out = Vector::Zero(dim(a + b));
  for (Index i = 0; i < x.size(); ++i)
    if (!x(i).is_zero()) out += x(i) * apply_sparse(ad(a, i, b), y);
  return out;
}

Vector ProlongTower::coordinates(int m, const Vector& amb) const {
  const TowerComponent& c = component(m);
  if (m < 0) return amb;
  if (!c.span.contains(amb))
    throw std::domain_error("ambient vector does not lie in g_" + std::to_string(m));
  Vector picked(static_cast<Index>(c.coordinate_columns.size()));
  for (std::size_t j = 0; j < c.coordinate_columns.size(); ++j) picked(static_cast<Index>(j)) = amb(c.coordinate_columns[j]);
  if (c.echelon) return picked;
  return apply_sparse(c.coordinate_map, picked);
}

Vector ProlongTower::ambient(int m, const Vector& coords) const {
  const TowerComponent& c = component(m);
  if (m < 0) return coords;
  return c.basis.transpose() * coords;
}

std::string ProlongTower::format(int m, const Vector& coords) const {
  return format_combination(coords, component(m).labels);
}

Subspace shchepochkina_prolong_step(const ProlongTower& t, int k) {
  if (k < 1) throw std::invalid_argument("prolong step needs k >= 1");
  if (k > t.cap() + 1)
    throw std::invalid_argument("components below degree " + std::to_string(k) + " are missing (tower cap " +
                                std::to_string(t.cap()) + ")");
  const GradedLieAlgebra& g = t.negative();
  const Index n = t.ambient_dim(k);
  std::vector<Vector> rows;
  for (Index u = 0; u < g.dim(); ++u)
    for (Index v = u + 1; v < g.dim(); ++v) {
      const int target = g.degree(u) + g.degree(v) + k;
      if (target < -t.depth()) continue;
      const Index rdim = t.dim(target);
      Matrix eq = Matrix::Zero(rdim, n);
      // X[u, v]
      const Vector uv = g.bracket_basis(u, v);
      for (Index w = 0; w < g.dim(); ++w)
        if (!uv(w).is_zero()) eq.block(0, t.block_offset(k, w), rdim, rdim) += uv(w) * Matrix::Identity(rdim, rdim);
      // - [Xu, v] = [v, Xu]
      const int du = g.degree(u) + k;
      const int dv = g.degree(v) + k;
      if (du >= -t.depth())
        eq.block(0, t.block_offset(k, u), rdim, t.dim(du)) += t.ad(g.degree(v), g.local_index(v), du);
      // - [u, Xv]
      if (dv >= -t.depth())
        eq.block(0, t.block_offset(k, v), rdim, t.dim(dv)) -= t.ad(g.degree(u), g.local_index(u), dv);
      for (Index r = 0; r < rdim; ++r)
        if (!eq.row(r).isZero()) rows.push_back(eq.row(r).transpose());
    }
  return kernel_basis(stack_rows(rows, n));
}

Subspace cartan_prolong_step(const ProlongTower& t, int k) {
  const GradedLieAlgebra& g = t.negative();
  if (t.depth() != 1 || !g.structure_constants().empty())
    throw std::invalid_argument("Cartan prolongation needs an abelian g- concentrated in degree -1");
  if (k < 1) throw std::invalid_argument("prolong step needs k >= 1");
  if (k > t.cap() + 1)
    throw std::invalid_argument("components below degree " + std::to_string(k) + " are missing (tower cap " +
                                std::to_string(t.cap()) + ")");
  const Index nv = g.dim();
  // evals[m] lists, for every tuple (a_1, ..., a_{m+1}) in lexicographic
  // order, the map Y ↦ Y(a_1)(a_2)...(a_{m+1}) from g_m to g_{-1}.
  std::vector<std::vector<Matrix>> evals(static_cast<std::size_t>(k));
  for (Index a = 0; a < nv; ++a) evals[0].push_back(t.action(0, a));
  for (int m = 1; m < k; ++m)
    for (Index a = 0; a < nv; ++a) {
      const Matrix first = t.action(m, a);
      for (const Matrix& rest : evals[static_cast<std::size_t>(m - 1)]) evals[static_cast<std::size_t>(m)].push_back(rest * first);
    }
  const auto& top = evals[static_cast<std::size_t>(k - 1)];
  const Index tail = static_cast<Index>(top.size()) / nv;  // number of (a_2, ..., a_k) tuples
  const Index bdim = t.dim(k - 1);
  const Index n = t.ambient_dim(k);
  std::vector<Vector> rows;
  for (Index v1 = 0; v1 < nv; ++v1)
    for (Index v2 = v1 + 1; v2 < nv; ++v2)
      for (Index r = 0; r < tail; ++r) {
        // X(v1)(v2, rest) - X(v2)(v1, rest)
        Matrix eq = Matrix::Zero(nv, n);
        eq.block(0, t.block_offset(k, v1), nv, bdim) += top[static_cast<std::size_t>(v2 * tail + r)];
        eq.block(0, t.block_offset(k, v2), nv, bdim) -= top[static_cast<std::size_t>(v1 * tail + r)];
        for (Index i = 0; i < nv; ++i)
          if (!eq.row(i).isZero()) rows.push_back(eq.row(i).transpose());
      }
  return kernel_basis(stack_rows(rows, n));
}

JacobiCheck check_tower_jacobi(const ProlongTower& t) {
  JacobiCheck out;
  out.verified_max_degree = t.cap();
  const int lo = t.min_degree();
  const int hi = t.cap();
  auto bracket_into = [&](int a, Index i, int b, const Vector& y) -> Vector {
    if (a + b < lo || y.size() == 0) return Vector::Zero(0);
    return apply_sparse(t.ad(a, i, b), y);
  };
  auto add = [](Vector& acc, const Vector& v) {
    if (v.size() == 0) return;
    if (acc.size() == 0) acc = v;
    else acc += v;
  };
  for (int a = lo; a <= hi; ++a)
    for (int b = a; b <= hi; ++b)
      for (int c = b; c <= hi; ++c) {
        const int total = a + b + c;
        if (total < lo || total > hi || a + b > hi || a + c > hi || b + c > hi) continue;
        for (Index i = 0; i < t.dim(a); ++i)
          for (Index j = (a == b ? i + 1 : 0); j < t.dim(b); ++j)
            for (Index l = (b == c ? j + 1 : 0); l < t.dim(c); ++l) {
              // [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
              const Vector yz = b + c >= lo ? Vector(t.ad(b, j, c).col(l)) : Vector::Zero(0);
              const Vector zx = a + c >= lo ? Vector(t.ad(c, l, a).col(i)) : Vector::Zero(0);
              const Vector xy = a + b >= lo ? Vector(t.ad(a, i, b).col(j)) : Vector::Zero(0);
              Vector jac;
              add(jac, bracket_into(a, i, b + c, yz));
              add(jac, bracket_into(b, j, a + c, zx));
              add(jac, bracket_into(c, l, a + b, xy));
              ++out.triples_checked;
              if (jac.size() != 0 && !jac.isZero())
                out.violations.push_back("Jacobi fails on (" + t.labels(a)[static_cast<std::size_t>(i)] + ", " +
                                         t.labels(b)[static_cast<std::size_t>(j)] + ", " +
                                         t.labels(c)[static_cast<std::size_t>(l)] + ")");
            }
      }
  return out;
}

namespace {

bool same_algebra(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (Index i = 0; i < a.dim(); ++i)
    if (a.degree(i) != b.degree(i)) return false;
  return a.structure_constants() == b.structure_constants();
}

// Degree-0 derivation matrix → ambient coordinates of degree 0.
Vector derivation_to_ambient(const ProlongTower& t, const Matrix& d) {
  const GradedLieAlgebra& g = t.negative();
  Vector amb(t.ambient_dim(0));
  for (Index b = 0; b < g.dim(); ++b) {
    const auto same = g.indices_of_degree(g.degree(b));
    for (std::size_t k = 0; k < same.size(); ++k)
      amb(t.block_offset(0, b) + static_cast<Index>(k)) = d(same[k], b);
  }
  return amb;
}

}  // namespace

ProlongTower build_tower(const GradedLieAlgebra& g, const DerivationSubalgebra& g0, int cap, ProlongMethod method,
                         bool verify_jacobi) {
  if (cap < 0) throw std::invalid_argument("cap must be >= 0");
  if (g.dim() == 0 || !g.is_negatively_graded()) throw std::invalid_argument("g- must be negatively graded and nonzero");
  if (!same_algebra(g, g0.parent)) throw std::invalid_argument("g0 acts on a different algebra than g-");
  validate_degree_zero_subalgebra(g0);
  if (method == ProlongMethod::cartan && (g.depth() != 1 || !g.structure_constants().empty()))
    throw std::invalid_argument("Cartan prolongation needs an abelian g- concentrated in degree -1");

  ProlongTower t;
  TowerBuilder::init(t, g, g0, method);
  Matrix g0_rows(g0.dim(), t.ambient_dim(0));
  for (Index i = 0; i < g0.dim(); ++i) g0_rows.row(i) = derivation_to_ambient(t, g0.basis[static_cast<std::size_t>(i)]).transpose();
  TowerBuilder::append(t, 0, g0_rows, g0.labels);

  for (int k = 1; k <= cap; ++k) {
    const Subspace gk = method == ProlongMethod::cartan ? cartan_prolong_step(t, k) : shchepochkina_prolong_step(t, k);
    std::vector<std::string> labels;
    for (Index i = 0; i < gk.dim(); ++i) labels.push_back("g" + std::to_string(k) + "_" + std::to_string(i + 1));
    TowerBuilder::append(t, k, gk.basis(), std::move(labels));
  }
  TowerBuilder::tabulate_nonnegative(t);
  if (verify_jacobi) TowerBuilder::set_jacobi(t, check_tower_jacobi(t));
  return t;
}

ProlongTower restrict_tower(const ProlongTower& t, const std::map<int, Matrix>& pieces,
                            const std::map<int, std::vector<std::string>>& labels) {
  const GradedLieAlgebra& g = t.negative();
  std::map<int, Matrix> rows;
  for (int m = 0; m <= t.cap(); ++m) {
    auto it = pieces.find(m);
    rows[m] = it == pieces.end() ? Matrix(Matrix::Identity(t.dim(m), t.dim(m))) : it->second;
    if (rows[m].cols() != t.dim(m))
      throw std::invalid_argument("piece of degree " + std::to_string(m) + " has the wrong number of columns");
    if (rank(rows[m]) != rows[m].rows())
      throw std::invalid_argument("piece of degree " + std::to_string(m) + " has dependent rows");
  }
  auto piece_labels = [&](int m) {
    auto it = labels.find(m);
    if (it != labels.end()) {
      if (static_cast<Index>(it->second.size()) != rows[m].rows())
        throw std::invalid_argument("label count does not match piece of degree " + std::to_string(m));
      return it->second;
    }
    if (pieces.find(m) == pieces.end()) return t.labels(m);
    std::vector<std::string> out;
    for (Index r = 0; r < rows[m].rows(); ++r) out.push_back(t.format(m, rows[m].row(r).transpose()));
    return out;
  };

  std::vector<Matrix> g0_basis;
  for (Index r = 0; r < rows[0].rows(); ++r) {
    Matrix d = Matrix::Zero(g.dim(), g.dim());
    for (Index i = 0; i < t.dim(0); ++i) d += rows[0](r, i) * t.g0().basis[static_cast<std::size_t>(i)];
    g0_basis.push_back(std::move(d));
  }
  ProlongTower s;
  TowerBuilder::init(s, g, make_derivation_subalgebra(g, std::move(g0_basis), piece_labels(0)), t.method());
  for (int m = 0; m <= t.cap(); ++m) {
    // Ambient rows over the parent's lower bases, re-expressed in the pieces.
    const Matrix parent = rows[m] * t.component(m).basis;
    Matrix amb(parent.rows(), s.ambient_dim(m));
    for (Index b = 0; b < g.dim(); ++b) {
      const int target = m + g.degree(b);
      if (target < -t.depth()) continue;
      const Matrix block = parent.block(0, t.block_offset(m, b), parent.rows(), t.block_size(m, b));
      for (Index r = 0; r < parent.rows(); ++r) {
        Vector v = block.row(r).transpose();
        if (target >= 0) {
          const auto c = solve(Matrix(rows[target].transpose()), v);
          if (!c)
            throw std::invalid_argument("pieces are not stable under g-: degree " + std::to_string(m) +
                                        " element maps outside the degree " + std::to_string(target) + " piece");
          v = *c;
        }
        amb.block(r, s.block_offset(m, b), 1, v.size()) = v.transpose();
      }
    }
    TowerBuilder::append(s, m, amb, piece_labels(m));
  }
  try {
    TowerBuilder::tabulate_nonnegative(s);
  } catch (const std::domain_error&) {
    throw std::invalid_argument("pieces are not closed under bracket within the truncation");
  }
  TowerBuilder::set_jacobi(s, check_tower_jacobi(s));
  return s;
}

ProlongTower build_tower(const GradedLieAlgebra& g, int cap) {
  return build_tower(g, derivations_of_degree(g, 0), cap);
}

Index DerivedSeriesReport::abelianization_dim() const {
  Index n = 0;
  for (const auto& p : abelianization) n += p.dim_quotient();
  return n;
}

Index DerivedSeriesReport::second_dim() const {
  Index n = 0;
  for (const auto& p : second) n += p.dim_quotient();
  return n;
}

namespace {

QuotientPiece quotient_piece(const ProlongTower& t, int m, const Subspace& space, const Subspace& commutator) {
  QuotientPiece p;
  p.degree = m;
  p.dim_space = space.dim();
  p.dim_commutator = commutator.dim();
  p.classes = complement_basis(commutator, space);
  for (Index r = 0; r < p.classes.rows(); ++r) p.class_labels.push_back(t.format(m, p.classes.row(r).transpose()));
  return p;
}

}  // namespace

DerivedSeriesReport derived_series_report(const ProlongTower& t) {
  const int d = t.depth();
  if (t.cap() < 3 || t.cap() < d)
    throw std::invalid_argument("derived series needs cap >= max(3, depth) (cap " + std::to_string(t.cap()) +
                                ", depth " + std::to_string(d) + ")");
  DerivedSeriesReport r;
  r.min_degree = -d;
  r.abelianization_max_degree = t.cap() - d;
  r.second_max_degree = t.cap() - 2 * d;

  for (int m = -d; m <= r.abelianization_max_degree; ++m) {
    std::vector<Vector> gens;
    for (int a = -d; a <= t.cap(); ++a) {
      const int b = m - a;
      if (b < a || b > t.cap()) continue;
      for (Index i = 0; i < t.dim(a); ++i) {
        const Matrix& ad = t.ad(a, i, b);
        for (Index j = 0; j < ad.cols(); ++j) gens.push_back(ad.col(j));
      }
    }
    const Subspace comm = Subspace::span(stack_rows(gens, t.dim(m)));
    r.derived[m] = comm;
    r.abelianization.push_back(quotient_piece(t, m, Subspace::full(t.dim(m)), comm));
  }
  for (int m = -d; m <= r.second_max_degree; ++m) {
    std::vector<Vector> gens;
    for (int a = -d; a <= r.abelianization_max_degree; ++a) {
      const int b = m - a;
      if (b < a || b > r.abelianization_max_degree) continue;
      const Subspace& ha = r.derived.at(a);
      const Subspace& hb = r.derived.at(b);
      for (Index i = 0; i < ha.dim(); ++i)
        for (Index j = 0; j < hb.dim(); ++j)
          gens.push_back(t.bracket(a, ha.basis().row(i).transpose(), b, hb.basis().row(j).transpose()));
    }
    const Subspace comm = Subspace::span(stack_rows(gens, t.dim(m)));
    r.second.push_back(quotient_piece(t, m, r.derived.at(m), comm));
  }
  return r;
}

}  // namespace ncurv
