#include "ncurv/graded_lie.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ncurv {

GradedLieAlgebra::GradedLieAlgebra(std::vector<BasisElement> basis, const BracketTable& brackets)
    : m_basis(std::move(basis)) {
  const Index n = dim();
  std::map<int, Index> seen;
  m_local.reserve(m_basis.size());
  for (const auto& b : m_basis) m_local.push_back(seen[b.degree]++);

  for (const auto& [key, value] : brackets) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("bracket index out of range");
    if (value.size() != n)
      throw std::invalid_argument("bracket value has length " + std::to_string(value.size()) + ", expected " +
                                  std::to_string(n));
    if (value.isZero()) continue;
    if (i == j) throw std::invalid_argument("[e_i, e_i] must vanish (index " + std::to_string(i) + ")");
    const int target = degree(i) + degree(j);
    for (Index k = 0; k < n; ++k) {
      if (!value(k).is_zero() && degree(k) != target)
        throw std::invalid_argument("bracket [" + label(i) + ", " + label(j) + "] has a component on " + label(k) +
                                    " outside degree " + std::to_string(target));
    }
    Vector v = i < j ? value : Vector(-value);
    auto stored = std::make_pair(std::min(i, j), std::max(i, j));
    auto [it, inserted] = m_brackets.emplace(stored, v);
    if (!inserted) it->second += v;
  }
  for (auto it = m_brackets.begin(); it != m_brackets.end();) {
    if (it->second.isZero()) it = m_brackets.erase(it);
    else ++it;
  }
}

std::optional<Index> GradedLieAlgebra::index_of(const std::string& label) const {
  for (Index i = 0; i < dim(); ++i)
    if (m_basis[static_cast<std::size_t>(i)].label == label) return i;
  return std::nullopt;
}

Vector GradedLieAlgebra::unit(Index i) const {
  Vector v = Vector::Zero(dim());
  v(i) = 1;
  return v;
}

Vector GradedLieAlgebra::bracket_basis(Index i, Index j) const {
  if (i == j) return Vector::Zero(dim());
  auto it = m_brackets.find({std::min(i, j), std::max(i, j)});
  if (it == m_brackets.end()) return Vector::Zero(dim());
  return i < j ? it->second : Vector(-it->second);
}

Vector GradedLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("coordinate length mismatch in bracket");
  Vector out = Vector::Zero(dim());
  for (const auto& [key, value] : m_brackets) {
    auto [i, j] = key;
    const Rational c = x(i) * y(j) - x(j) * y(i);
    if (!c.is_zero()) out += c * value;
  }
  return out;
}

Matrix GradedLieAlgebra::ad(const Vector& x) const {
  Matrix m(dim(), dim());
  for (Index j = 0; j < dim(); ++j) m.col(j) = bracket(x, unit(j));
  return m;
}

std::vector<int> GradedLieAlgebra::degrees() const {
  std::set<int> ds;
  for (const auto& b : m_basis) ds.insert(b.degree);
  return {ds.begin(), ds.end()};
}

std::vector<Index> GradedLieAlgebra::indices_of_degree(int d) const {
  std::vector<Index> out;
  for (Index i = 0; i < dim(); ++i)
    if (degree(i) == d) out.push_back(i);
  return out;
}

int GradedLieAlgebra::depth() const {
  int d = 0;
  for (const auto& b : m_basis) d = std::max(d, -b.degree);
  return d;
}

bool GradedLieAlgebra::is_negatively_graded() const {
  return std::all_of(m_basis.begin(), m_basis.end(), [](const BasisElement& b) { return b.degree < 0; });
}

bool GradedLieAlgebra::generated_in_degree_minus_one() const {
  std::vector<Vector> level;
  for (Index i : indices_of_degree(-1)) level.push_back(unit(i));
  const std::vector<Vector> generators = level;
  Matrix acc(0, dim());
  while (!level.empty()) {
    Matrix grown(acc.rows() + static_cast<Index>(level.size()), dim());
    grown.topRows(acc.rows()) = acc;
    for (std::size_t k = 0; k < level.size(); ++k) grown.row(acc.rows() + static_cast<Index>(k)) = level[k].transpose();
    acc = Subspace::span(grown).basis();
    std::vector<Vector> next;
    for (const auto& g : generators)
      for (const auto& w : level) {
        Vector b = bracket(g, w);
        if (!b.isZero()) next.push_back(b);
      }
    level = std::move(next);
  }
  return acc.rows() == dim();
}

std::vector<JacobiViolation> check_jacobi(const GradedLieAlgebra& g) {
  std::vector<JacobiViolation> out;
  const Index n = g.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        Vector jac = g.bracket(g.unit(i), g.bracket_basis(j, k)) + g.bracket(g.unit(j), g.bracket_basis(k, i)) +
                     g.bracket(g.unit(k), g.bracket_basis(i, j));
        if (!jac.isZero()) out.push_back({i, j, k, jac});
      }
  return out;
}

bool is_derivation(const GradedLieAlgebra& g, const Matrix& d, int shift) {
  const Index n = g.dim();
  if (d.rows() != n || d.cols() != n) return false;
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (!d(r, c).is_zero() && g.degree(r) != g.degree(c) + shift) return false;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      Vector lhs = d * g.bracket_basis(a, b);
      Vector rhs = g.bracket(d.col(a), g.unit(b)) + g.bracket(g.unit(a), d.col(b));
      if (lhs != rhs) return false;
    }
  return true;
}

DerivationSubalgebra derivations_of_degree(const GradedLieAlgebra& g, int k) {
  const Index n = g.dim();
  // Unknowns: entries D(r, c) with deg r = deg c + k.
  std::vector<std::pair<Index, Index>> unknowns;
  std::vector<Index> slot(static_cast<std::size_t>(n * n), -1);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (g.degree(r) == g.degree(c) + k) {
        slot[static_cast<std::size_t>(c * n + r)] = static_cast<Index>(unknowns.size());
        unknowns.emplace_back(r, c);
      }
  auto slot_of = [&](Index r, Index c) { return slot[static_cast<std::size_t>(c * n + r)]; };

  const Index nu = static_cast<Index>(unknowns.size());
  std::vector<Vector> rows;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      // Equation valued in g: D[e_a,e_b] - [D e_a, e_b] - [e_a, D e_b] = 0.
      Matrix eq = Matrix::Zero(n, nu);
      const Vector ab = g.bracket_basis(a, b);
      for (Index w = 0; w < n; ++w) {
        if (ab(w).is_zero()) continue;
        for (Index r = 0; r < n; ++r)
          if (Index s = slot_of(r, w); s >= 0) eq(r, s) += ab(w);
      }
      for (Index r = 0; r < n; ++r) {
        if (Index s = slot_of(r, a); s >= 0) eq.col(s) -= g.bracket_basis(r, b);
        if (Index s = slot_of(r, b); s >= 0) eq.col(s) -= g.bracket_basis(a, r);
      }
      for (Index r = 0; r < n; ++r)
        if (!eq.row(r).isZero()) rows.push_back(eq.row(r).transpose());
    }
  Matrix system(static_cast<Index>(rows.size()), nu);
  for (std::size_t i = 0; i < rows.size(); ++i) system.row(static_cast<Index>(i)) = rows[i].transpose();
  const Subspace ker = kernel_basis(system);

  DerivationSubalgebra out;
  out.parent = g;
  out.degree = k;
  for (Index i = 0; i < ker.dim(); ++i) {
    Matrix d = Matrix::Zero(n, n);
    for (Index u = 0; u < nu; ++u) d(unknowns[static_cast<std::size_t>(u)].first, unknowns[static_cast<std::size_t>(u)].second) = ker.basis()(i, u);
    out.basis.push_back(std::move(d));
    out.labels.push_back("g" + std::to_string(k) + "_" + std::to_string(i + 1));
  }
  return out;
}

namespace {

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace

void validate_degree_zero_subalgebra(const DerivationSubalgebra& sub) {
  const GradedLieAlgebra& g = sub.parent;
  if (sub.degree != 0) throw std::invalid_argument("g0 must consist of degree-0 derivations");
  if (sub.labels.size() != sub.basis.size()) throw std::invalid_argument("g0 labels and basis differ in length");
  Matrix flat(sub.dim(), g.dim() * g.dim());
  for (Index i = 0; i < sub.dim(); ++i) {
    const Matrix& d = sub.basis[static_cast<std::size_t>(i)];
    if (!is_derivation(g, d, 0))
      throw std::invalid_argument("g0 element '" + sub.labels[static_cast<std::size_t>(i)] +
                                  "' is not a degree-0 derivation of g-");
    flat.row(i) = flatten(d).transpose();
  }
  const Subspace span = Subspace::span(flat);
  if (span.dim() != sub.dim()) throw std::invalid_argument("g0 basis is linearly dependent");
  for (Index i = 0; i < sub.dim(); ++i)
    for (Index j = i + 1; j < sub.dim(); ++j) {
      const Matrix& a = sub.basis[static_cast<std::size_t>(i)];
      const Matrix& b = sub.basis[static_cast<std::size_t>(j)];
      Matrix c = a * b - b * a;
      if (!span.contains(flatten(c)))
        throw std::invalid_argument("g0 is not closed under commutator: [" + sub.labels[static_cast<std::size_t>(i)] +
                                    ", " + sub.labels[static_cast<std::size_t>(j)] + "] leaves the span");
    }
}

DerivationSubalgebra make_derivation_subalgebra(const GradedLieAlgebra& g, std::vector<Matrix> basis,
                                                std::vector<std::string> labels, int degree) {
  DerivationSubalgebra out{g, degree, std::move(basis), std::move(labels)};
  if (out.labels.size() != out.basis.size()) throw std::invalid_argument("derivation labels and basis differ in length");
  return out;
}

DerivationSubalgebra orthogonal_subalgebra(const GradedLieAlgebra& abelian) {
  const Index n = abelian.dim();
  if (!abelian.structure_constants().empty() || abelian.dim_of_degree(-1) != n)
    throw std::invalid_argument("o(n) is only defined here for an abelian algebra in degree -1");
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Matrix m = Matrix::Zero(n, n);
      m(i, j) = 1;
      m(j, i) = -1;
      basis.push_back(std::move(m));
      labels.push_back("o" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return make_derivation_subalgebra(abelian, std::move(basis), std::move(labels));
}

GradedLieAlgebra abelian(int n) {
  if (n < 1) throw std::invalid_argument("abelian(n) needs n >= 1");
  std::vector<BasisElement> basis;
  for (int i = 1; i <= n; ++i) basis.push_back({"x" + std::to_string(i), -1});
  return {std::move(basis), {}};
}

GradedLieAlgebra heisenberg(int r) {
  if (r < 1) throw std::invalid_argument("heisenberg(r) needs r >= 1");
  std::vector<BasisElement> basis;
  for (int i = 1; i <= r; ++i) basis.push_back({"p" + std::to_string(i), -1});
  for (int i = 1; i <= r; ++i) basis.push_back({"q" + std::to_string(i), -1});
  basis.push_back({"z", -2});
  const Index n = 2 * r + 1;
  GradedLieAlgebra::BracketTable br;
  for (Index i = 0; i < r; ++i) {
    Vector z = Vector::Zero(n);
    z(n - 1) = 1;
    br[{i, i + r}] = z;
  }
  return {std::move(basis), br};
}

GradedLieAlgebra engel_symbol() {
  std::vector<BasisElement> basis{{"y1", -1}, {"y2", -1}, {"y3", -2}, {"y4", -3}};
  GradedLieAlgebra::BracketTable br;
  Vector y3 = Vector::Zero(4);
  y3(2) = 1;
  Vector y4 = Vector::Zero(4);
  y4(3) = 1;
  br[{0, 1}] = y3;
  br[{0, 2}] = y4;
  return {std::move(basis), br};
}

GradedLieAlgebra builtin(const std::string& name, int param) {
  if (name == "abelian") return abelian(param);
  if (name == "heisenberg" || name == "heis") return heisenberg(param);
  if (name == "engel" || name == "engel_symbol") return engel_symbol();
  throw std::invalid_argument("unknown builtin algebra '" + name + "'");
}

GradedLieAlgebra builtin(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (colon == std::string::npos) {
    if (name == "engel" || name == "engel_symbol") return engel_symbol();
    if (name == "abelian" || name == "heisenberg" || name == "heis")
      throw std::invalid_argument("builtin '" + spec + "' needs a parameter, e.g. " + name + ":2");
    throw std::invalid_argument("unknown builtin algebra '" + name + "' (expected abelian:N, heisenberg:R or engel)");
  }
  int param = 0;
  try {
    std::size_t used = 0;
    param = std::stoi(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid builtin parameter in '" + spec + "'");
  }
  return builtin(name, param);
}

std::string format_element(const GradedLieAlgebra& g, const Vector& x) {
  std::vector<std::string> labels;
  for (const auto& b : g.basis()) labels.push_back(b.label);
  return format_combination(x, labels);
}

}  // namespace ncurv
