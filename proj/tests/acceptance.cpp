// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                   exit 0 iff every criterion passes
//   acceptance --expect-red 1,4  exit 0 iff exactly criteria 1 and 4 fail

#include "ncurv/cohomology.hpp"
#include "ncurv/distribution.hpp"
#include "ncurv/vf_calculus.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ncurv;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
  }
};

template <typename T>
std::string seq(const std::vector<T>& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ")";
  return s.str();
}

std::vector<Index> h_dims(const CohomologyReport& r) {
  std::vector<Index> out;
  for (const auto& b : r.table) out.push_back(b.dim_cohomology());
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TowerPtr make_tower(const GradedLieAlgebra& g, const DerivationSubalgebra& g0, int cap,
                    ProlongMethod method = ProlongMethod::shchepochkina) {
  return std::make_shared<const ProlongTower>(build_tower(g, g0, cap, method));
}

// Every tower built below, for the Jacobi and δ² sweeps.
std::vector<std::pair<std::string, TowerPtr>> g_towers;
// (tower, s, lo, hi) of every cohomology computation below.
struct Block {
  TowerPtr tower;
  int s, lo, hi;
};
std::vector<Block> g_blocks;

CohomologyReport h2(const std::string& name, TowerPtr t, int lo, int hi) {
  g_towers.emplace_back(name, t);
  g_blocks.push_back({t, 2, lo, hi});
  return cohomology(t, 2, lo, hi);
}

// Expected Engel H^2 for orders -1..6.
const std::vector<Index> kEngelH2{0, 0, 0, 2, 0, 0, 0, 0};

// y1..y4 realized by ∂1, X-1, D3, ∂4.
std::vector<LabeledField> engel_negative() {
  const auto all = engel_basis(-1);
  std::vector<LabeledField> out;
  int k = 1;
  for (const char* l : {"d1", "X-1", "D3", "d4"})
    for (const auto& f : all)
      if (f.label == l) out.push_back({"y" + std::to_string(k++), f.field, f.degree});
  return out;
}

std::vector<PolyVectorField> fields_of(const std::vector<LabeledField>& fs) {
  std::vector<PolyVectorField> out;
  for (const auto& f : fs) out.push_back(f.field);
  return out;
}

PolyVectorField engel_field(const std::string& label) {
  for (const auto& f : engel_basis(0))
    if (f.label == label) return f.field;
  throw std::logic_error("no Engel field " + label);
}

TowerPtr g_engel5;
CohomologyReport g_engel_h2;

Outcome criterion1() {
  Outcome o;
  const GradedLieAlgebra g = engel_symbol();
  const auto t0 = std::chrono::steady_clock::now();
  g_engel5 = make_tower(g, derivations_of_degree(g, 0), 5);
  g_engel_h2 = h2("engel cap 5", g_engel5, -1, 6);
  const double dt = seconds_since(t0);
  o.expect(h_dims(g_engel_h2) == kEngelH2,
           "dim H^2 orders -1..6 = " + seq(h_dims(g_engel_h2)) + ", expected " + seq(kEngelH2));
  o.expect(dt < 10, "runtime " + std::to_string(dt).substr(0, 5) + " s < 10 s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const TowerPtr t = g_engel5;
  const auto neg = fields_of(engel_negative());
  Cochain c1 = zero_cochain(t, 2, 2);
  add_term(c1, {0, 1}, tower_coordinates(*t, neg, engel_field("E") + engel_field("H"), 0));
  Cochain c2 = zero_cochain(t, 2, 2);
  add_term(c2, {3, 2}, Vector::Constant(1, Rational(1)));
  const std::vector<std::pair<const char*, Cochain*>> reps{{"y1*^y2* (x) (E+H)", &c1}, {"y4*^y3* (x) y4", &c2}};
  const Purity expected[] = {Purity::pure, Purity::mixed};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto [name, c] = reps[i];
    const CocycleCheck v = verify_cocycle(*c);
    o.expect(v.is_cocycle, std::string(name) + " is a cocycle" +
                               (v.is_cocycle ? "" : " (d = " + format_cochain(ce_differential(*c)) + ")"));
    o.expect(!v.is_coboundary, std::string(name) + " is not a coboundary");
    if (v.is_cocycle) {
      const Purity p = purity(*c);
      o.expect(p == expected[i], std::string(name) + " is " + to_string(p) + ", expected " + to_string(expected[i]));
    } else {
      o.expect(false, std::string(name) + " purity undefined, expected " + to_string(expected[i]));
    }
  }
  o.expect(independent_modulo_coboundaries({c1, c2}), "the two are independent cocycles modulo B^2");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    int r, lo, hi;
    Index g0_dim;
  };
  for (const Case c : {Case{1, 0, 6, 4}, Case{2, 0, 4, 11}}) {
    const GradedLieAlgebra h = heisenberg(c.r);
    const DerivationSubalgebra der0 = derivations_of_degree(h, 0);
    o.expect(der0.dim() == c.g0_dim, "heis(" + std::to_string(c.r) + ") dim g0 = " + std::to_string(der0.dim()));
    const auto r = h2("heis(" + std::to_string(c.r) + ")", make_tower(h, der0, c.hi - 1), c.lo, c.hi);
    const std::vector<Index> zeros(static_cast<std::size_t>(c.hi - c.lo + 1), 0);
    o.expect(h_dims(r) == zeros, "heis(" + std::to_string(c.r) + ") dim H^2 orders " + std::to_string(c.lo) + ".." +
                                     std::to_string(c.hi) + " = " + seq(h_dims(r)));
  }
  const double dt = seconds_since(t0);
  o.expect(dt < 60, "runtime " + std::to_string(dt).substr(0, 5) + " s < 60 s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const GradedLieAlgebra g = engel_symbol();
  const auto t = make_tower(g, derivations_of_degree(g, 0), 6);
  g_towers.emplace_back("engel cap 6", t);
  const std::vector<Index> expected{1, 1, 2, 3, 1, 1, 1, 1, 1, 1};
  o.expect(t->dims() == expected, "dims -3..6 = " + seq(t->dims()) + ", expected " + seq(expected));
  const DerivedSeriesReport d = derived_series_report(*t);
  const auto neg = fields_of(engel_negative());
  Matrix eh(2, t->dim(0));
  eh.row(0) = tower_coordinates(*t, neg, engel_field("E"), 0).transpose();
  eh.row(1) = tower_coordinates(*t, neg, engel_field("H"), 0).transpose();
  const Subspace& comm0 = d.derived.at(0);
  const bool eh_classes = sum(comm0, Subspace::span(eh)).dim() == comm0.dim() + 2;
  o.expect(d.abelianization_dim() == 2 && eh_classes,
           "dim e/[e,e] = " + std::to_string(d.abelianization_dim()) + (eh_classes ? ", E and H classes independent" : ", E and H not independent mod [e,e]"));
  Vector y1 = Vector::Zero(2);
  y1(0) = 1;
  o.expect(d.second_dim() == 1 && d.derived.at(-1).contains(y1),
           "dim e1/[e1,e1] = " + std::to_string(d.second_dim()) + ", expected 1 (class of d1)");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const PfaffSystem e = engel_system();
  const auto basis = engel_basis(4);
  std::vector<std::string> bad;
  for (const auto& f : basis)
    if (!preserves_pfaff(f.field, e)) bad.push_back(f.label);
  o.expect(bad.empty(), "every field of engel_basis(4) preserves the system" + (bad.empty() ? "" : ", except " + seq(bad)));
  std::vector<Index> table, solved;
  for (int k = -3; k <= 4; ++k) {
    table.push_back(std::count_if(basis.begin(), basis.end(), [k](const LabeledField& f) { return f.degree == k; }));
    solved.push_back(static_cast<Index>(preserving_fields(e, engel_weights(), k).size()));
  }
  o.expect(table == solved, "preserving fields per weight -3..4 = " + seq(solved) + ", table " + seq(table));
  const GradedLieAlgebra m = graded_model(engel_negative());
  const GradedLieAlgebra g = engel_symbol();
  bool same = m.dim() == g.dim() && m.structure_constants() == g.structure_constants();
  for (Index i = 0; same && i < g.dim(); ++i) same = m.degree(i) == g.degree(i) && m.label(i) == g.label(i);
  o.expect(same, "graded_model reproduces engel_symbol");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<Index> frozen{1, 6, 20};
  for (int n = 2; n <= 4; ++n) {
    const GradedLieAlgebra a = abelian(n);
    const auto r = h2("abelian(" + std::to_string(n) + "), o", make_tower(a, orthogonal_subalgebra(a), 1), 1, 2);
    const Index formula = n * n * (n * n - 1) / 12;
    const Index got = r.at(2).dim_cohomology();
    o.expect(r.at(1).dim_cohomology() == 0, "n = " + std::to_string(n) + ": order-1 H^2 = " + std::to_string(r.at(1).dim_cohomology()));
    o.expect(got == frozen[static_cast<std::size_t>(n - 2)] && got == formula,
             "n = " + std::to_string(n) + ": order-2 H^2 = " + std::to_string(got) + " (n^2(n^2-1)/12 = " +
                 std::to_string(formula) + ")");
  }
  const GradedLieAlgebra a = abelian(2);
  const auto t = make_tower(a, derivations_of_degree(a, 0), 2);
  const auto tc = make_tower(a, derivations_of_degree(a, 0), 3, ProlongMethod::cartan);
  g_towers.emplace_back("abelian(2), gl(2)", t);
  g_towers.emplace_back("abelian(2), gl(2), Cartan", tc);
  for (int k = 1; k <= 3; ++k)
    o.expect(cartan_prolong_step(*t, k) == shchepochkina_prolong_step(*t, k),
             "(abelian(2), gl(2)) Cartan and Shchepochkina agree at k = " + std::to_string(k));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Distribution d = Distribution::from_pfaff(parse_pfaff("dx4 - x3*dx1; dx3 - x2*dx1"));
  for (const Point& x : {origin(4), Point(4, Rational(1))}) {
    const GrowthVector gv = flag_at_point(d, x);
    o.expect(gv.dims == std::vector<int>{2, 3, 4}, "growth at " + format_point(x) + " = " + seq(gv.dims));
  }
  const GradedLieAlgebra s = symbol_algebra(d, origin(4));
  const GradedLieAlgebra ref = engel_symbol();
  bool same = s.dim() == ref.dim() && s.structure_constants() == ref.structure_constants();
  for (Index i = 0; same && i < s.dim(); ++i) same = s.degree(i) == ref.degree(i);
  o.expect(same, "symbol algebra has the canonical Engel constants");
  const auto r = h2("Engel pipeline", make_tower(s, derivations_of_degree(s, 0), 5), -1, 6);
  o.expect(h_dims(r) == h_dims(g_engel_h2), "pipeline H^2 = " + seq(h_dims(r)) + " equals the builtin computation");
  o.expect(h_dims(r) == kEngelH2, "pipeline H^2 equals the criterion 1 table " + seq(kEngelH2));
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t blocks = 0;
  bool delta_ok = true;
  for (const auto& b : g_blocks)
    for (int order = b.lo; order <= b.hi; ++order)
      for (int s = b.s - 1; s <= b.s; ++s) {
        if (s < 0 || CochainSpace::required_cap(b.tower->negative(), s + 2, order) > b.tower->cap()) continue;
        const Matrix d2 = differential_matrix(*b.tower, s + 1, order) * differential_matrix(*b.tower, s, order);
        delta_ok = delta_ok && d2.isZero();
        ++blocks;
      }
  o.expect(delta_ok, "delta^2 = 0 on every basis cochain (" + std::to_string(blocks) + " blocks)");

  bool jac = true;
  for (const char* name : {"abelian:1", "abelian:2", "abelian:3", "abelian:4", "heisenberg:1", "heisenberg:2",
                           "heisenberg:3", "engel"})
    jac = jac && check_jacobi(builtin(name)).empty();
  for (const auto& [name, t] : g_towers) {
    const bool ok = t->jacobi().ok();
    jac = jac && ok;
    if (!ok) o.details.push_back("Jacobi fails on tower " + name);
  }
  o.expect(jac, "Jacobi on all builtins and " + std::to_string(g_towers.size()) + " truncated towers");

  std::mt19937 rng(1018);
  std::uniform_int_distribution<int> dim(1, 6), val(-2, 2), gen(0, 5);
  auto random = [&](Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = Rational(val(rng)) / Rational(1 + (val(rng) + 2) % 3);
    return m;
  };
  int cases = 0;
  bool lin = true;
  for (; cases < 1000; ++cases) {
    const Index n = dim(rng);
    const Matrix m = random(dim(rng), n);
    lin = lin && rank(m) + kernel_basis(m).dim() == n;
    const Subspace a = Subspace::span(random(gen(rng), n)), b = Subspace::span(random(gen(rng), n));
    lin = lin && sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim();
  }
  o.expect(lin, "rank-nullity and Grassmann on " + std::to_string(cases) + " random exact instances");
  return o;
}

std::set<int> parse_list(const char* text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<std::set<int>> expect_red;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-red") == 0 && i + 1 < argc) expect_red = parse_list(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--expect-red N,M,...]\n";
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Engel structure functions", criterion1},
      {"Engel listed cocycles", criterion2},
      {"contact vanishing", criterion3},
      {"Engel tower dimensions", criterion4},
      {"Engel fields", criterion5},
      {"Riemann tensor and Cartan/Shchepochkina", criterion6},
      {"Pfaff-to-cohomology pipeline", criterion7},
      {"property suite", criterion8},
  };
  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) red.insert(n);
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
  }
  std::cout << red.size() << " of " << criteria.size() << " criteria failed\n";
  if (!expect_red) return red.empty() ? 0 : 1;
  if (red == *expect_red) {
    std::cout << "failing set matches the expected red list\n";
    return 0;
  }
  std::cout << "failing set differs from the expected red list\n";
  return 1;
}
