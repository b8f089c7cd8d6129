#include "ncurv/cohomology.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>
#include <stdexcept>

namespace ncurv {

namespace {

// Visits strictly increasing s-tuples of {0..n-1} in lexicographic order.
template <typename F>
void for_each_tuple(Index n, int s, F&& f) {
  std::vector<Index> t(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) t[static_cast<std::size_t>(i)] = i;
  if (s > n) return;
  while (true) {
    f(t);
    int i = s - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Sorts args in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::vector<Index>& args) {
  int sign = 1;
  for (std::size_t i = 1; i < args.size(); ++i)
    for (std::size_t j = i; j > 0 && args[j - 1] >= args[j]; --j) {
      if (args[j - 1] == args[j]) return 0;
      std::swap(args[j - 1], args[j]);
      sign = -sign;
    }
  return sign;
}

int degree_sum(const GradedLieAlgebra& g, const std::vector<Index>& args) {
  int s = 0;
  for (Index a : args) s += g.degree(a);
  return s;
}

}  // namespace

int CochainSpace::required_cap(const GradedLieAlgebra& g, int s, int order) {
  std::vector<int> degs;
  for (Index i = 0; i < g.dim(); ++i) degs.push_back(g.degree(i));
  if (static_cast<int>(degs.size()) < s) return std::numeric_limits<int>::min();
  std::sort(degs.begin(), degs.end(), std::greater<>());
  int top = 0;
  for (int i = 0; i < s; ++i) top += degs[static_cast<std::size_t>(i)];
  return order + top;
}

CochainSpace::CochainSpace(const ProlongTower& t, int s, int order) : m_s(s), m_order(order) {
  if (s < 0) throw std::invalid_argument("cochain degree must be >= 0");
  const GradedLieAlgebra& g = t.negative();
  const int need = required_cap(g, s, order);
  if (need > t.cap())
    throw std::invalid_argument("cap insufficient for C^" + std::to_string(s) + " at order " + std::to_string(order) +
                                ": need cap >= " + std::to_string(need) + ", tower has " + std::to_string(t.cap()));
  for_each_tuple(g.dim(), s, [&](const std::vector<Index>& args) {
    const int target = order + degree_sum(g, args);
    if (target < t.min_degree()) return;
    CochainBlock b{args, target, m_dim, t.dim(target)};
    m_lookup[args] = m_blocks.size();
    m_blocks.push_back(b);
    m_dim += b.size;
  });
}

const CochainBlock* CochainSpace::find(const std::vector<Index>& args) const {
  auto it = m_lookup.find(args);
  return it == m_lookup.end() ? nullptr : &m_blocks[it->second];
}

Vector Cochain::value(std::vector<Index> args) const {
  const ProlongTower& t = *tower;
  const int target = order + degree_sum(t.negative(), args);
  const Index n = target >= t.min_degree() ? t.dim(target) : 0;
  const int sign = sort_with_sign(args);
  const CochainSpace sp = space();
  const CochainBlock* b = sign == 0 ? nullptr : sp.find(args);
  if (b == nullptr) return Vector::Zero(n);
  return Rational(sign) * values.segment(b->offset, b->size);
}

Cochain zero_cochain(TowerPtr tower, int s, int order) {
  const CochainSpace sp(*tower, s, order);
  return Cochain{std::move(tower), s, order, Vector::Zero(sp.dim())};
}

void add_term(Cochain& c, std::vector<Index> args, const Vector& value, const Rational& coeff) {
  if (static_cast<int>(args.size()) != c.s) throw std::invalid_argument("argument count does not match cochain degree");
  const int sign = sort_with_sign(args);
  if (sign == 0) throw std::invalid_argument("repeated argument in alternating cochain");
  const CochainSpace sp = c.space();
  const CochainBlock* b = sp.find(args);
  if (b == nullptr) {
    if (value.isZero()) return;
    throw std::invalid_argument("cochain block lies below the tower");
  }
  if (value.size() != b->size) throw std::invalid_argument("value length does not match the target component");
  c.values.segment(b->offset, b->size) += Rational(sign) * coeff * value;
}

std::vector<Cochain> cochain_basis(TowerPtr tower, int s, int order) {
  const CochainSpace sp(*tower, s, order);
  std::vector<Cochain> out;
  for (Index i = 0; i < sp.dim(); ++i) {
    Vector v = Vector::Zero(sp.dim());
    v(i) = 1;
    out.push_back(Cochain{tower, s, order, std::move(v)});
  }
  return out;
}

Matrix differential_matrix(const ProlongTower& t, int s, int order) {
  const GradedLieAlgebra& g = t.negative();
  const CochainSpace src(t, s, order);
  const CochainSpace dst(t, s + 1, order);
  Matrix d = Matrix::Zero(dst.dim(), src.dim());
  for (const CochainBlock& out : dst.blocks()) {
    const auto& x = out.args;
    const int T = out.target_degree;
    // Σ_i (-1)^i [x_i, f(..., x̂_i, ...)]
    for (int i = 0; i <= s; ++i) {
      std::vector<Index> rest = x;
      rest.erase(rest.begin() + i);
      const CochainBlock* in = src.find(rest);
      if (in == nullptr) continue;
      const Index xi = x[static_cast<std::size_t>(i)];
      const Matrix& adx = t.ad(g.degree(xi), g.local_index(xi), in->target_degree);
      const Rational sign = (i % 2 == 0) ? 1 : -1;
      d.block(out.offset, in->offset, out.size, in->size) += sign * adx;
    }
    // Σ_{i<j} (-1)^{i+j} f([x_i, x_j], ..., x̂_i, ..., x̂_j, ...)
    for (int i = 0; i <= s; ++i)
      for (int j = i + 1; j <= s; ++j) {
        const Vector br = g.bracket_basis(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
        if (br.isZero()) continue;
        for (Index w = 0; w < g.dim(); ++w) {
          if (br(w).is_zero()) continue;
          std::vector<Index> args{w};
          for (int k = 0; k <= s; ++k)
            if (k != i && k != j) args.push_back(x[static_cast<std::size_t>(k)]);
          const int perm = sort_with_sign(args);
          if (perm == 0) continue;
          const CochainBlock* in = src.find(args);
          if (in == nullptr) continue;
          const Rational coeff = Rational(((i + j) % 2 == 0 ? 1 : -1) * perm) * br(w);
          for (Index r = 0; r < out.size; ++r) d(out.offset + r, in->offset + r) += coeff;
        }
      }
    (void)T;
  }
  return d;
}

Cochain ce_differential(const Cochain& c) {
  const Matrix d = differential_matrix(*c.tower, c.s, c.order);
  return Cochain{c.tower, c.s + 1, c.order, d * c.values};
}

Matrix g0_action_matrix(const ProlongTower& t, int s, int order, Index g0_index) {
  const GradedLieAlgebra& g = t.negative();
  const CochainSpace sp(t, s, order);
  Matrix m = Matrix::Zero(sp.dim(), sp.dim());
  for (const CochainBlock& out : sp.blocks()) {
    // [D, f(x)]
    m.block(out.offset, out.offset, out.size, out.size) += t.ad(0, g0_index, out.target_degree);
    // - f(x_1, .., [D, x_i], .., x_s)
    for (int i = 0; i < s; ++i) {
      const Index xi = out.args[static_cast<std::size_t>(i)];
      const int di = g.degree(xi);
      const Matrix& ad0 = t.ad(0, g0_index, di);  // g_{di} → g_{di}
      const auto same = g.indices_of_degree(di);
      const Vector dx = ad0.col(g.local_index(xi));
      for (std::size_t k = 0; k < same.size(); ++k) {
        if (dx(static_cast<Index>(k)).is_zero()) continue;
        std::vector<Index> args = out.args;
        args[static_cast<std::size_t>(i)] = same[k];
        const int perm = sort_with_sign(args);
        if (perm == 0) continue;
        const CochainBlock* in = sp.find(args);
        if (in == nullptr) continue;
        const Rational coeff = -Rational(perm) * dx(static_cast<Index>(k));
        for (Index r = 0; r < out.size; ++r) m(out.offset + r, in->offset + r) += coeff;
      }
    }
  }
  return m;
}

const CohomologyBlock& CohomologyReport::at(int order) const {
  for (const auto& b : table)
    if (b.order == order) return b;
  throw std::out_of_range("order " + std::to_string(order) + " not in report");
}

Index CohomologyReport::total_dim() const {
  Index n = 0;
  for (const auto& b : table) n += b.dim_cohomology();
  return n;
}

namespace {

Subspace coboundaries(const ProlongTower& t, int s, int order) {
  const CochainSpace sp(t, s, order);
  if (s == 0) return Subspace::zero(sp.dim());
  return image(differential_matrix(t, s - 1, order));
}

CohomologyBlock compute_block(const TowerPtr& tower, int s, int order) {
  const ProlongTower& t = *tower;
  CohomologyBlock b;
  b.order = order;
  const Matrix d = differential_matrix(t, s, order);
  b.dim_cochains = d.cols();
  const Subspace z = kernel_basis(d);
  const Subspace bnd = coboundaries(t, s, order);
  if (!z.contains(bnd)) throw std::logic_error("δ∘δ != 0 at order " + std::to_string(order));
  b.dim_cocycles = z.dim();
  b.dim_coboundaries = bnd.dim();
  const Matrix reps = complement_basis(bnd, z);
  for (Index r = 0; r < reps.rows(); ++r) b.representatives.push_back(Cochain{tower, s, order, reps.row(r).transpose()});
  return b;
}

}  // namespace

CohomologyReport cohomology(TowerPtr tower, int s, int order_min, int order_max, bool parallel) {
  if (s < 0) throw std::invalid_argument("cohomology degree must be >= 0");
  if (order_min > order_max) throw std::invalid_argument("empty order range");
  const int need = CochainSpace::required_cap(tower->negative(), s - 1 < 0 ? 0 : s - 1, order_max);
  const int need_s = CochainSpace::required_cap(tower->negative(), s, order_max);
  const int required = std::max(need, need_s);
  if (required > tower->cap())
    throw std::invalid_argument("cap insufficient for H^" + std::to_string(s) + " up to order " +
                                std::to_string(order_max) + ": need cap >= " + std::to_string(required) +
                                ", tower has " + std::to_string(tower->cap()));
  CohomologyReport r;
  r.s = s;
  r.order_min = order_min;
  r.order_max = order_max;
  r.cap = tower->cap();
  if (parallel) {
    std::vector<std::future<CohomologyBlock>> jobs;
    for (int k = order_min; k <= order_max; ++k)
      jobs.push_back(std::async(std::launch::async, [tower, s, k] { return compute_block(tower, s, k); }));
    for (auto& j : jobs) r.table.push_back(j.get());
  } else {
    for (int k = order_min; k <= order_max; ++k) r.table.push_back(compute_block(tower, s, k));
  }
  return r;
}

CocycleCheck verify_cocycle(const Cochain& c) {
  CocycleCheck out;
  out.is_cocycle = ce_differential(c).is_zero();
  out.is_coboundary = coboundaries(*c.tower, c.s, c.order).contains(c.values);
  return out;
}

Purity purity(const Cochain& c) {
  if (!ce_differential(c).is_zero()) throw std::invalid_argument("purity is only defined for cocycles");
  const ProlongTower& t = *c.tower;
  const GradedLieAlgebra& g = t.negative();
  const CochainSpace sp = c.space();
  auto pattern = [&](const std::vector<Index>& args) {
    std::vector<int> p;
    for (Index a : args) p.push_back(g.degree(a));
    std::sort(p.begin(), p.end());
    return p;
  };
  std::set<std::vector<int>> support;
  for (const auto& b : sp.blocks())
    if (!c.values.segment(b.offset, b.size).isZero()) support.insert(pattern(b.args));
  const Subspace bnd = coboundaries(t, c.s, c.order);
  for (Index r = 0; r < bnd.dim(); ++r)
    for (const auto& b : sp.blocks()) {
      if (!support.count(pattern(b.args))) continue;
      if (!bnd.basis().row(r).segment(b.offset, b.size).isZero()) return Purity::mixed;
    }
  return Purity::pure;
}

bool independent_modulo_coboundaries(const std::vector<Cochain>& cs) {
  if (cs.empty()) return true;
  const Cochain& first = cs.front();
  for (const auto& c : cs) {
    if (c.s != first.s || c.order != first.order || c.tower != first.tower)
      throw std::invalid_argument("cochains differ in degree, order or tower");
    if (!ce_differential(c).is_zero()) return false;
  }
  const Subspace bnd = coboundaries(*first.tower, first.s, first.order);
  Matrix stacked(static_cast<Index>(cs.size()), first.values.size());
  for (std::size_t i = 0; i < cs.size(); ++i) stacked.row(static_cast<Index>(i)) = cs[i].values.transpose();
  return sum(bnd, Subspace::span(stacked)).dim() == bnd.dim() + static_cast<Index>(cs.size());
}

std::string format_cochain(const Cochain& c) {
  const ProlongTower& t = *c.tower;
  const GradedLieAlgebra& g = t.negative();
  const CochainSpace sp = c.space();
  std::string out;
  for (const auto& b : sp.blocks()) {
    const Vector v = c.values.segment(b.offset, b.size);
    if (v.isZero()) continue;
    std::string lhs;
    for (std::size_t i = 0; i < b.args.size(); ++i) lhs += (i ? "^" : "") + g.label(b.args[i]) + "*";
    std::string val = t.format(b.target_degree, v);
    const bool plain = val.find_first_of("+-*") == std::string::npos;
    if (!out.empty()) out += " + ";
    out += (lhs.empty() ? std::string("1") : lhs) + " (x) " + (plain ? val : "(" + val + ")");
  }
  return out.empty() ? "0" : out;
}

const char* to_string(Purity p) { return p == Purity::pure ? "pure" : "mixed"; }

}  // namespace ncurv
