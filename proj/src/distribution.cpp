#include "ncurv/distribution.hpp"

#include "ncurv/vf_calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace ncurv {

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(s.size()) == k) {
      out.push_back(s);
      return;
    }
    for (int i = start; i < n; ++i) {
      s.push_back(i);
      rec(i + 1);
      s.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Polynomial>> submatrix(const PfaffSystem& p, const std::vector<int>& cols) {
  std::vector<std::vector<Polynomial>> m;
  for (const auto& a : p.forms) {
    std::vector<Polynomial> row;
    for (int c : cols) row.push_back(a.coeffs.at(static_cast<std::size_t>(c)));
    m.push_back(std::move(row));
  }
  return m;
}

// Fields as rows over a shared (component, monomial) index, dropping those
// Q-dependent on earlier ones.
std::vector<PolyVectorField> independent_over_q(std::vector<PolyVectorField> fields) {
  std::map<std::pair<std::size_t, Exponent>, Index> slot;
  for (const auto& f : fields)
    for (std::size_t c = 0; c < f.coeffs.size(); ++c)
      for (const auto& [e, v] : f.coeffs[c].terms()) slot.emplace(std::make_pair(c, e), static_cast<Index>(slot.size()));
  std::vector<PolyVectorField> out;
  Subspace acc = Subspace::zero(static_cast<Index>(slot.size()));
  for (auto& f : fields) {
    Vector v = Vector::Zero(acc.ambient_dim());
    for (std::size_t c = 0; c < f.coeffs.size(); ++c)
      for (const auto& [e, val] : f.coeffs[c].terms()) v(slot.at({c, e})) = val;
    if (v.isZero() || acc.contains(v)) continue;
    acc = Subspace::span(vstack(acc.basis(), v.transpose()));
    out.push_back(std::move(f));
  }
  return out;
}

Matrix values_as_columns(const std::vector<PolyVectorField>& fields, const Point& x, int n) {
  Matrix m(n, static_cast<Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) m.col(static_cast<Index>(j)) = fields[j].evaluate(x);
  return m;
}

void check_point(const Distribution& d, const Point& x) {
  if (static_cast<int>(x.size()) != d.n_vars())
    throw std::invalid_argument("point " + format_point(x) + " has " + std::to_string(x.size()) +
                                " coordinates, expected " + std::to_string(d.n_vars()));
  if (rank(values_as_columns(d.spanning_fields(), x, d.n_vars())) != d.rank())
    throw std::invalid_argument("spanning fields are dependent at " + format_point(x));
}

}  // namespace

Distribution::Distribution(std::vector<PolyVectorField> spanning) : m_fields(std::move(spanning)) {
  if (m_fields.empty()) throw std::invalid_argument("a distribution needs at least one spanning field");
  for (const auto& f : m_fields)
    if (f.n_vars() != m_fields.front().n_vars()) throw std::invalid_argument("spanning fields in different variable counts");
}

Distribution Distribution::from_pfaff(const PfaffSystem& p) {
  const int n = p.n_vars;
  const int k = static_cast<int>(p.forms.size());
  if (k >= n) throw std::invalid_argument("a Pfaff system with " + std::to_string(k) + " forms in " +
                                          std::to_string(n) + " variables has no nonzero kernel");
  if (k == 0) {
    std::vector<PolyVectorField> all;
    for (int i = 0; i < n; ++i) all.push_back(PolyVectorField::partial(n, i));
    return Distribution(std::move(all));
  }
  std::vector<int> pivot;
  Polynomial det(n);
  for (const auto& cols : subsets(n, k)) {
    Polynomial d = determinant(submatrix(p, cols));
    if (d.is_zero()) continue;
    if (d.as_constant()) {
      pivot = cols;
      det = d;
      break;
    }
    if (pivot.empty()) {
      pivot = cols;
      det = d;
    }
  }
  if (pivot.empty()) throw std::invalid_argument("forms of the Pfaff system are linearly dependent");
  const auto constant = det.as_constant();
  const auto a = submatrix(p, pivot);

  std::vector<PolyVectorField> fields;
  for (int j = 0; j < n; ++j) {
    if (std::find(pivot.begin(), pivot.end(), j) != pivot.end()) continue;
    // Solve A_S y = -A_j: y_s = det(A_S with column s replaced by -A_j) / det.
    PolyVectorField x(n);
    x.coeffs[static_cast<std::size_t>(j)] = constant ? Polynomial::constant(n, 1) : det;
    for (std::size_t s = 0; s < pivot.size(); ++s) {
      auto m = a;
      for (int r = 0; r < k; ++r)
        m[static_cast<std::size_t>(r)][s] = -p.forms[static_cast<std::size_t>(r)].coeffs[static_cast<std::size_t>(j)];
      Polynomial y = determinant(m);
      if (constant) y *= Rational(1) / *constant;
      x.coeffs[static_cast<std::size_t>(pivot[s])] = std::move(y);
    }
    fields.push_back(std::move(x));
  }
  return Distribution(std::move(fields));
}

const std::vector<PolyVectorField>& Distribution::bracket_level(int level) const {
  if (level < 1) throw std::invalid_argument("bracket levels start at 1");
  if (m_levels.empty()) m_levels.push_back(independent_over_q(m_fields));
  while (static_cast<int>(m_levels.size()) < level) {
    std::vector<PolyVectorField> next;
    for (const auto& y : m_fields)
      for (const auto& w : m_levels.back()) next.push_back(vf_bracket(y, w));
    m_levels.push_back(independent_over_q(std::move(next)));
  }
  return m_levels[static_cast<std::size_t>(level - 1)];
}

bool GrowthVector::stall_then_growth() const {
  return !dims.empty() && !level_dims.empty() && level_dims.back() > dims.back();
}

GrowthVector flag_at_point(const Distribution& dist, const Point& point) {
  check_point(dist, point);
  const int n = dist.n_vars();
  GrowthVector g;
  g.point = point;
  g.n_vars = n;
  std::vector<PolyVectorField> acc;
  bool stalled = false;
  for (int level = 1; level <= n + 1; ++level) {
    const auto& fields = dist.bracket_level(level);
    acc.insert(acc.end(), fields.begin(), fields.end());
    const int d = static_cast<int>(rank(values_as_columns(acc, point, n)));
    const int prev = g.level_dims.empty() ? 0 : g.level_dims.back();
    g.level_dims.push_back(d);
    if (!stalled && d > prev) g.dims.push_back(d);
    else stalled = true;
    if (d == n || fields.empty()) break;
  }
  return g;
}

RegularityReport regularity_scan(const Distribution& dist, const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("regularity_scan needs at least one point");
  RegularityReport r;
  for (const auto& p : points) r.growth.push_back(flag_at_point(dist, p));
  for (std::size_t i = 0; i < r.growth.size(); ++i)
    if (r.growth[i].dims != r.growth[0].dims || r.growth[i].stall_then_growth()) r.disagreements.push_back(i);
  return r;
}

namespace {

struct SymbolBasis {
  std::vector<PolyVectorField> reps;
  std::vector<int> degrees;
};

SymbolBasis symbol_basis(const Distribution& dist, const Point& x) {
  const GrowthVector g = flag_at_point(dist, x);
  if (g.stall_then_growth())
    throw std::runtime_error("irregular point " + format_point(x) + ": the flag stalls and then grows");
  const int n = dist.n_vars();
  SymbolBasis b;
  for (const auto& y : dist.spanning_fields()) {
    b.reps.push_back(y);
    b.degrees.push_back(-1);
  }
  std::vector<PolyVectorField> previous = dist.spanning_fields();
  for (int i = 2; i <= g.depth(); ++i) {
    Subspace span = image(values_as_columns(b.reps, x, n));
    std::vector<PolyVectorField> current;
    for (const auto& y : dist.spanning_fields())
      for (const auto& w : previous) {
        if (span.dim() == g.dims[static_cast<std::size_t>(i - 1)]) break;
        PolyVectorField c = vf_bracket(y, w);
        const Vector v = c.evaluate(x);
        if (span.contains(v)) continue;
        span = sum(span, Subspace::span(Matrix(v.transpose())));
        current.push_back(std::move(c));
      }
    if (span.dim() != g.dims[static_cast<std::size_t>(i - 1)])
      throw std::runtime_error("irregular point " + format_point(x) + ": brackets of degree " + std::to_string(-i) +
                               " representatives do not fill D_" + std::to_string(i));
    for (auto& c : current) {
      b.reps.push_back(c);
      b.degrees.push_back(-i);
    }
    previous = std::move(current);
  }
  return b;
}

}  // namespace

std::vector<PolyVectorField> symbol_representatives(const Distribution& dist, const Point& point) {
  return symbol_basis(dist, point).reps;
}

GradedLieAlgebra symbol_algebra(const Distribution& dist, const Point& point) {
  const SymbolBasis b = symbol_basis(dist, point);
  const int n = dist.n_vars();
  const Index dim = static_cast<Index>(b.reps.size());
  const int depth = b.degrees.empty() ? 0 : -b.degrees.back();
  std::vector<BasisElement> basis;
  for (Index i = 0; i < dim; ++i)
    basis.push_back({"y" + std::to_string(i + 1), b.degrees[static_cast<std::size_t>(i)]});
  GradedLieAlgebra::BracketTable table;
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) {
      const int k = -(b.degrees[static_cast<std::size_t>(i)] + b.degrees[static_cast<std::size_t>(j)]);
      if (k > depth) continue;
      const Vector v = vf_bracket(b.reps[static_cast<std::size_t>(i)], b.reps[static_cast<std::size_t>(j)]).evaluate(point);
      // Representatives of degree >= -k span D_k at the point.
      std::vector<Index> cols;
      for (Index c = 0; c < dim; ++c)
        if (-b.degrees[static_cast<std::size_t>(c)] <= k) cols.push_back(c);
      Matrix m(n, static_cast<Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c)
        m.col(static_cast<Index>(c)) = b.reps[static_cast<std::size_t>(cols[c])].evaluate(point);
      const auto sol = solve(m, v);
      if (!sol)
        throw std::runtime_error("irregular point " + format_point(point) + ": [" + basis[static_cast<std::size_t>(i)].label +
                                 ", " + basis[static_cast<std::size_t>(j)].label + "] leaves D_" + std::to_string(k));
      Vector out = Vector::Zero(dim);
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (-b.degrees[static_cast<std::size_t>(cols[c])] == k) out(cols[c]) = (*sol)(static_cast<Index>(c));
      if (!out.isZero()) table[{i, j}] = out;
    }
  return GradedLieAlgebra(std::move(basis), table);
}

Point origin(int n_vars) { return Point(static_cast<std::size_t>(n_vars), Rational(0)); }

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace ncurv
