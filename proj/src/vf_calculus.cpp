#include "ncurv/vf_calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace ncurv {

PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.n_vars() != y.n_vars()) throw std::invalid_argument("fields in different variable counts");
  PolyVectorField out(x.n_vars());
  for (int i = 0; i < x.n_vars(); ++i)
    out.coeffs[static_cast<std::size_t>(i)] = x.apply(y.coeffs[static_cast<std::size_t>(i)]) -
                                              y.apply(x.coeffs[static_cast<std::size_t>(i)]);
  return out;
}

OneForm differential(const Polynomial& f) {
  OneForm df(f.n_vars());
  for (int j = 0; j < f.n_vars(); ++j) df.coeffs[static_cast<std::size_t>(j)] = f.derivative(j);
  return df;
}

Polynomial contract(const OneForm& alpha, const PolyVectorField& x) {
  if (alpha.n_vars() != x.n_vars()) throw std::invalid_argument("form and field in different variable counts");
  Polynomial s(x.n_vars());
  for (int i = 0; i < x.n_vars(); ++i)
    s += alpha.coeffs[static_cast<std::size_t>(i)] * x.coeffs[static_cast<std::size_t>(i)];
  return s;
}

OneForm lie_derivative(const PolyVectorField& x, const OneForm& alpha) {
  if (alpha.n_vars() != x.n_vars()) throw std::invalid_argument("form and field in different variable counts");
  const int n = x.n_vars();
  OneForm out(n);
  for (int j = 0; j < n; ++j) {
    Polynomial c = x.apply(alpha.coeffs[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) {
      const Polynomial& a = alpha.coeffs[static_cast<std::size_t>(i)];
      if (a.is_zero()) continue;
      c += a * x.coeffs[static_cast<std::size_t>(i)].derivative(j);
    }
    out.coeffs[static_cast<std::size_t>(j)] = std::move(c);
  }
  return out;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  const int vars = m[0].at(0).n_vars();
  if (n == 1) return m[0][0];
  Polynomial det(vars);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(minor);
    if (c % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      f(s);
      return;
    }
    for (int i = start; i < n; ++i) {
      s[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Cofactors of the last row of [α_1; ..; α_k; *] for every (k+1)-column
// subset: the minor equals Σ_p cofactor[p] * β_{S_p}.
struct SpanTest {
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<Polynomial>> cofactors;
};

SpanTest span_test(const PfaffSystem& p) {
  const int n = p.n_vars;
  const int k = static_cast<int>(p.forms.size());
  bool independent = false;
  for_each_subset(n, k, [&](const std::vector<int>& cols) {
    if (independent) return;
    std::vector<std::vector<Polynomial>> m;
    for (const auto& a : p.forms) {
      std::vector<Polynomial> row;
      for (int c : cols) row.push_back(a.coeffs.at(static_cast<std::size_t>(c)));
      m.push_back(std::move(row));
    }
    if (!determinant(m).is_zero()) independent = true;
  });
  if (!independent) throw std::invalid_argument("forms of the Pfaff system are linearly dependent");
  SpanTest t;
  if (k + 1 > n) return t;
  for_each_subset(n, k + 1, [&](const std::vector<int>& cols) {
    std::vector<Polynomial> cof;
    for (int pos = 0; pos <= k; ++pos) {
      if (k == 0) {
        cof.push_back(Polynomial::constant(n, 1));
        continue;
      }
      std::vector<std::vector<Polynomial>> m;
      for (const auto& a : p.forms) {
        std::vector<Polynomial> row;
        for (int q = 0; q <= k; ++q)
          if (q != pos) row.push_back(a.coeffs.at(static_cast<std::size_t>(cols[static_cast<std::size_t>(q)])));
        m.push_back(std::move(row));
      }
      Polynomial d = determinant(m);
      cof.push_back((k + pos) % 2 == 0 ? d : -d);
    }
    t.subsets.push_back(cols);
    t.cofactors.push_back(std::move(cof));
  });
  return t;
}

std::vector<Polynomial> minors_of(const SpanTest& t, const OneForm& beta) {
  std::vector<Polynomial> out;
  for (std::size_t s = 0; s < t.subsets.size(); ++s) {
    Polynomial m(beta.n_vars());
    for (std::size_t pos = 0; pos < t.subsets[s].size(); ++pos)
      m += t.cofactors[s][pos] * beta.coeffs.at(static_cast<std::size_t>(t.subsets[s][pos]));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

bool in_form_span(const OneForm& beta, const PfaffSystem& p) {
  if (beta.n_vars() != p.n_vars) throw std::invalid_argument("form and system in different variable counts");
  if (p.forms.empty()) return beta.is_zero();
  const SpanTest t = span_test(p);
  for (const auto& m : minors_of(t, beta))
    if (!m.is_zero()) return false;
  return true;
}

bool preserves_pfaff(const PolyVectorField& x, const PfaffSystem& p) {
  if (x.n_vars() != p.n_vars) throw std::invalid_argument("field and system in different variable counts");
  if (p.forms.empty()) return true;
  const SpanTest t = span_test(p);
  for (const auto& a : p.forms)
    for (const auto& m : minors_of(t, lie_derivative(x, a)))
      if (!m.is_zero()) return false;
  return true;
}

std::vector<PolyVectorField> monomial_fields(const WeightedGrading& w, int degree) {
  const int n = static_cast<int>(w.weights.size());
  for (int wi : w.weights)
    if (wi <= 0) throw std::invalid_argument("weights must be positive");
  std::vector<PolyVectorField> out;
  for (int i = 0; i < n; ++i) {
    const int target = degree + w.weights[static_cast<std::size_t>(i)];
    if (target < 0) continue;
    Exponent e(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (j == n) {
        if (left != 0) return;
        PolyVectorField x(n);
        x.coeffs[static_cast<std::size_t>(i)] = Polynomial::monomial(e);
        out.push_back(std::move(x));
        return;
      }
      const int wj = w.weights[static_cast<std::size_t>(j)];
      for (int a = left / wj; a >= 0; --a) {
        e[static_cast<std::size_t>(j)] = a;
        rec(j + 1, left - a * wj);
      }
      e[static_cast<std::size_t>(j)] = 0;
    };
    rec(0, target);
  }
  return out;
}

namespace {

// Coordinates of polynomial data over a shared monomial index.
class MonomialIndex {
 public:
  Index slot(int component, const Exponent& e) {
    auto [it, inserted] = m_slots.emplace(std::make_pair(component, e), static_cast<Index>(m_slots.size()));
    return it->second;
  }
  Index size() const { return static_cast<Index>(m_slots.size()); }

 private:
  std::map<std::pair<int, Exponent>, Index> m_slots;
};

std::vector<std::pair<Index, Rational>> flatten(MonomialIndex& idx, const std::vector<Polynomial>& comps) {
  std::vector<std::pair<Index, Rational>> out;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& [e, v] : comps[c].terms()) out.emplace_back(idx.slot(static_cast<int>(c), e), v);
  return out;
}

Matrix to_columns(const std::vector<std::vector<std::pair<Index, Rational>>>& cols, Index rows) {
  Matrix m = Matrix::Zero(rows, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : cols[j]) m(r, static_cast<Index>(j)) += v;
  return m;
}

}  // namespace

std::vector<PolyVectorField> preserving_fields(const PfaffSystem& p, const WeightedGrading& w, int degree) {
  if (static_cast<int>(w.weights.size()) != p.n_vars) throw std::invalid_argument("weight count does not match system");
  const auto monos = monomial_fields(w, degree);
  if (monos.empty()) return {};
  const SpanTest t = p.forms.empty() ? SpanTest{} : span_test(p);
  MonomialIndex idx;
  std::vector<std::vector<std::pair<Index, Rational>>> cols;
  for (const auto& m : monos) {
    std::vector<Polynomial> comps;
    for (const auto& a : p.forms)
      for (auto& minor : minors_of(t, lie_derivative(m, a))) comps.push_back(std::move(minor));
    cols.push_back(flatten(idx, comps));
  }
  const Subspace ker = kernel_basis(to_columns(cols, idx.size()));
  std::vector<PolyVectorField> out;
  for (Index r = 0; r < ker.dim(); ++r) {
    PolyVectorField x(p.n_vars);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      const Rational& c = ker.basis()(r, static_cast<Index>(k));
      if (!c.is_zero()) x += c * monos[k];
    }
    out.push_back(std::move(x));
  }
  return out;
}

PfaffSystem engel_system() { return parse_pfaff("dx4 - x3*dx1; dx3 - x2*dx1", 4); }

WeightedGrading engel_weights() { return WeightedGrading{{1, 1, 2, 3}}; }

PolyVectorField engel_x(int n) {
  if (n < -1) throw std::invalid_argument("X_n is defined for n >= -1");
  PolyVectorField x(4);
  auto x1_pow = [](int k) {
    Exponent e{k, 0, 0, 0};
    return Polynomial::monomial(e);
  };
  x.coeffs[1] = x1_pow(n + 1);
  x.coeffs[2] = x1_pow(n + 2) * Rational(1, n + 2);
  x.coeffs[3] = x1_pow(n + 3) * Rational(1, (n + 2) * (n + 3));
  return x;
}

std::vector<LabeledField> engel_basis(int max_degree) {
  if (max_degree < -3) throw std::invalid_argument("engel_basis needs max_degree >= -3");
  const std::vector<LabeledField> fixed{
      {"d4", parse_field("d4", 4), -3},
      {"D3", parse_field("d3 + x1*d4", 4), -2},
      {"d1", parse_field("d1", 4), -1},
      {"X-1", engel_x(-1), -1},
      {"E", parse_field("x1*d1 + x2*d2 + 2*x3*d3 + 3*x4*d4", 4), 0},
      {"H", parse_field("x1*d1 - x2*d2 + x4*d4", 4), 0},
      {"X0", engel_x(0), 0},
  };
  std::vector<LabeledField> out;
  for (const auto& f : fixed)
    if (f.degree <= max_degree) out.push_back(f);
  for (int n = 1; n <= max_degree; ++n) out.push_back({"X" + std::to_string(n), engel_x(n), n});
  return out;
}

PfaffSystem contact_system(int r) {
  if (r < 1) throw std::invalid_argument("contact system needs r >= 1");
  const int n = 2 * r + 1;
  std::string text = "dx1";
  for (int i = 1; i <= r; ++i) {
    const std::string p = std::to_string(1 + i), q = std::to_string(1 + r + i);
    text += " + x" + p + "*dx" + q + " - x" + q + "*dx" + p;
  }
  return parse_pfaff(text, n);
}

WeightedGrading contact_weights(int r) {
  WeightedGrading w{std::vector<int>(static_cast<std::size_t>(2 * r + 1), 1)};
  w.weights[0] = 2;
  return w;
}

std::vector<LabeledField> contact_negative_fields(int r) {
  if (r < 1) throw std::invalid_argument("contact fields need r >= 1");
  const int n = 2 * r + 1;
  std::vector<LabeledField> out;
  for (int i = 1; i <= r; ++i) {
    const std::string p = std::to_string(1 + i), q = std::to_string(1 + r + i);
    out.push_back({"p" + std::to_string(i), parse_field("d" + p + " + x" + q + "*d1", n), -1});
  }
  for (int i = 1; i <= r; ++i) {
    const std::string p = std::to_string(1 + i), q = std::to_string(1 + r + i);
    out.push_back({"q" + std::to_string(i), parse_field("d" + q + " - x" + p + "*d1", n), -1});
  }
  out.push_back({"z", vf_bracket(out[0].field, out[static_cast<std::size_t>(r)].field), -2});
  return out;
}

GradedLieAlgebra graded_model(const std::vector<LabeledField>& fields, bool truncate) {
  if (fields.empty()) return GradedLieAlgebra({}, {});
  const int n = fields.front().field.n_vars();
  int top = fields.front().degree;
  std::map<int, std::vector<Index>> by_degree;
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].field.n_vars() != n) throw std::invalid_argument("fields in different variable counts");
    top = std::max(top, fields[i].degree);
    by_degree[fields[i].degree].push_back(static_cast<Index>(i));
    basis.push_back({fields[i].label, fields[i].degree});
  }
  GradedLieAlgebra::BracketTable table;
  const Index dim = static_cast<Index>(fields.size());
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) {
      const auto& a = fields[static_cast<std::size_t>(i)];
      const auto& b = fields[static_cast<std::size_t>(j)];
      const PolyVectorField br = vf_bracket(a.field, b.field);
      if (br.is_zero()) continue;
      const int d = a.degree + b.degree;
      auto it = by_degree.find(d);
      if (it == by_degree.end()) {
        if (truncate && d > top) continue;
        throw NonClosureError(a.label, b.label, "[" + a.label + ", " + b.label + "] = " + br.to_string() +
                                                    " has no fields of degree " + std::to_string(d) + " to land in");
      }
      MonomialIndex idx;
      std::vector<std::vector<std::pair<Index, Rational>>> cols;
      for (Index k : it->second) cols.push_back(flatten(idx, fields[static_cast<std::size_t>(k)].field.coeffs));
      const auto rhs = flatten(idx, br.coeffs);
      Matrix m = to_columns(cols, idx.size());
      Vector v = Vector::Zero(idx.size());
      for (const auto& [r, c] : rhs) v(r) += c;
      const auto sol = solve(m, v);
      if (!sol)
        throw NonClosureError(a.label, b.label, "[" + a.label + ", " + b.label + "] = " + br.to_string() +
                                                    " is not a combination of the degree " + std::to_string(d) +
                                                    " fields");
      Vector full = Vector::Zero(dim);
      for (std::size_t k = 0; k < it->second.size(); ++k) full(it->second[k]) = (*sol)(static_cast<Index>(k));
      table[{i, j}] = full;
    }
  return GradedLieAlgebra(std::move(basis), table);
}

Vector tower_coordinates(const ProlongTower& t, const std::vector<PolyVectorField>& negative, const PolyVectorField& x,
                         int degree) {
  const GradedLieAlgebra& g = t.negative();
  if (static_cast<Index>(negative.size()) != g.dim())
    throw std::invalid_argument("need one field per g- basis element");
  if (degree < t.min_degree() || degree > t.cap())
    throw std::domain_error("degree " + std::to_string(degree) + " is outside the tower");
  if (degree < 0) {
    const auto idx = g.indices_of_degree(degree);
    if (idx.empty()) {
      if (x.is_zero()) return Vector::Zero(0);
      throw std::domain_error("field " + x.to_string() + " has no image in degree " + std::to_string(degree));
    }
    MonomialIndex mi;
    std::vector<std::vector<std::pair<Index, Rational>>> cols;
    for (Index i : idx) cols.push_back(flatten(mi, negative[static_cast<std::size_t>(i)].coeffs));
    const auto rhs = flatten(mi, x.coeffs);
    Vector v = Vector::Zero(mi.size());
    for (const auto& [r, c] : rhs) v(r) += c;
    const auto sol = solve(to_columns(cols, mi.size()), v);
    if (!sol) throw std::domain_error("field " + x.to_string() + " is not in g" + std::to_string(degree));
    return *sol;
  }
  Vector amb = Vector::Zero(t.ambient_dim(degree));
  for (Index b = 0; b < g.dim(); ++b) {
    const int target = degree + g.degree(b);
    const PolyVectorField y = vf_bracket(x, negative[static_cast<std::size_t>(b)]);
    if (target < t.min_degree()) {
      if (!y.is_zero()) throw std::domain_error("bracket of " + x.to_string() + " leaves the tower");
      continue;
    }
    const Vector c = tower_coordinates(t, negative, y, target);
    amb.segment(t.block_offset(degree, b), c.size()) = c;
  }
  return t.coordinates(degree, amb);
}

}  // namespace ncurv
