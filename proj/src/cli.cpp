#include "ncurv/cli.hpp"

#include "ncurv/cohomology.hpp"
#include "ncurv/distribution.hpp"
#include "ncurv/report.hpp"
#include "ncurv/vf_calculus.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ncurv {

namespace {

struct Check {
  std::string name;
  bool ok = false;
  std::string expected;
  std::string observed;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  Json data = Json::object();

  void add(std::string n, bool ok, std::string expected, std::string observed) {
    checks.push_back({std::move(n), ok, std::move(expected), std::move(observed)});
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
};

// A resolved algebra input and a one-line description of where it came from.
struct AlgebraInput {
  GradedLieAlgebra g;
  std::string source;
};

std::string ints(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

template <typename T>
std::string dims_string(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::vector<Point> default_points(int n) {
  std::vector<Point> pts{origin(n), Point(static_cast<std::size_t>(n), Rational(1))};
  Point ramp;
  for (int i = 1; i <= n; ++i) ramp.push_back(Rational(i));
  if (ramp != pts.back()) pts.push_back(ramp);
  return pts;
}

void check_single_source(const JobSpec& job) {
  const int sources = !job.builtin.empty() + !job.input_path.empty() + !job.pfaff.empty() + !job.fields.empty();
  if (sources > 1) throw std::invalid_argument("give only one of --builtin, --input, --pfaff, --fields");
}

// Distribution from --pfaff/--fields or a distribution job file; nullopt when
// the job names an algebra instead.
std::optional<DistributionInput> distribution_input(const JobSpec& job) {
  check_single_source(job);
  DistributionInput in;
  if (!job.pfaff.empty()) in.pfaff = job.pfaff;
  else if (!job.fields.empty()) {
    std::string item;
    std::istringstream ss(job.fields);
    while (std::getline(ss, item, ';')) in.fields.push_back(item);
  } else if (!job.input_path.empty()) {
    const Json j = read_json(job.input_path);
    if (j.contains("basis")) return std::nullopt;
    in = distribution_input_from_json(j);
  } else {
    return std::nullopt;
  }
  if (job.n_vars) in.n_vars = job.n_vars;
  if (!job.points.empty()) in.points = parse_points(job.points);
  return in;
}

std::string describe(const DistributionInput& in, const Distribution& d) {
  if (in.pfaff) return "kernel of " + *in.pfaff;
  std::string s = "span of ";
  for (std::size_t i = 0; i < d.spanning_fields().size(); ++i)
    s += (i ? "; " : "") + d.spanning_fields()[i].to_string();
  return s;
}

struct SymbolResult {
  Distribution dist;
  RegularityReport scan;
  std::optional<GradedLieAlgebra> symbol;
  std::string diagnostic;
};

SymbolResult compute_symbol(const DistributionInput& in) {
  Distribution dist = make_distribution(in);
  const std::vector<Point> points = in.points.empty() ? default_points(dist.n_vars()) : in.points;
  SymbolResult r{dist, regularity_scan(dist, points), std::nullopt, {}};
  if (!r.scan.regular()) {
    std::string diag;
    for (const auto& g : r.scan.growth) {
      diag += (diag.empty() ? "" : ", ") + format_point(g.point) + " growth " + dims_string(g.dims);
      if (g.stall_then_growth()) diag += " (stalls, then grows)";
    }
    r.diagnostic = "irregular on the sample: " + diag;
    return r;
  }
  r.symbol = symbol_algebra(dist, points.front());
  return r;
}

AlgebraInput resolve_algebra(const JobSpec& job) {
  check_single_source(job);
  if (!job.builtin.empty()) return {builtin(job.builtin), job.builtin};
  if (auto in = distribution_input(job)) {
    SymbolResult r = compute_symbol(*in);
    if (!r.symbol) throw std::runtime_error(r.diagnostic);
    const Point& at = r.scan.growth.front().point;
    return {*r.symbol, "symbol of " + describe(*in, r.dist) + " at " + format_point(at)};
  }
  if (!job.input_path.empty()) return {algebra_from_json(read_json(job.input_path)), job.input_path};
  throw std::invalid_argument("no input: give --builtin, --input, --pfaff or --fields");
}

DerivationSubalgebra make_g0(const GradedLieAlgebra& g, const std::string& which) {
  if (which == "der") return derivations_of_degree(g, 0);
  if (which == "o") return orthogonal_subalgebra(g);
  throw std::invalid_argument("unknown --g0 '" + which + "' (expected der or o)");
}

const char* method_name(ProlongMethod m) { return m == ProlongMethod::cartan ? "cartan" : "shchepochkina"; }

void print_header(std::ostream& out, const Json& fields) {
  for (const auto& [k, v] : fields.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

// Orders and cap for a cohomology-type command.
struct Range {
  int lo = 0, hi = 0, cap = 0;
};

Range cohomology_range(const JobSpec& job, const GradedLieAlgebra& g, int default_hi) {
  Range r;
  if (job.s < 1) throw std::invalid_argument("--s must be >= 1");
  if (job.orders) {
    r.lo = job.orders->first;
    r.hi = job.orders->second;
  } else {
    r.lo = job.s - g.depth();
    r.hi = std::max(default_hi, r.lo);
  }
  const int needed = std::max(0, r.hi - job.s + 1);
  r.cap = job.cap.value_or(needed);
  if (r.cap < needed)
    throw std::invalid_argument("cap " + std::to_string(r.cap) + " is too small for orders " + std::to_string(r.lo) +
                                ".." + std::to_string(r.hi) + " of H^" + std::to_string(job.s) + "; use --cap " +
                                std::to_string(needed));
  return r;
}

// ---- commands -------------------------------------------------------------

int cmd_symbol(const JobSpec& job, std::ostream& out, std::ostream& err) {
  check_single_source(job);
  auto in = distribution_input(job);
  if (!in) throw std::invalid_argument("symbol needs a distribution: --pfaff, --fields or a distribution --input");
  SymbolResult r = compute_symbol(*in);
  out << "distribution: " << describe(*in, r.dist) << "\n";
  out << "variables: " << r.dist.n_vars() << ", rank " << r.dist.rank() << "\n";
  out << "spanning fields:\n";
  for (std::size_t i = 0; i < r.dist.spanning_fields().size(); ++i)
    out << "  Y" << i + 1 << " = " << r.dist.spanning_fields()[i].to_string() << "\n";
  out << "growth vectors:\n";
  for (const auto& g : r.scan.growth) out << "  " << growth_line(g) << "\n";
  out << "regular on sample: " << yes_no(r.scan.regular()) << "\n";
  write_json(job.json_path, distribution_report_to_json(r.dist, r.scan, r.symbol));
  if (!r.symbol) {
    err << "error: " << r.diagnostic << "\n";
    return kExitCheckFailed;
  }
  out << "symbol algebra at " << format_point(r.scan.growth.front().point) << ":\n" << algebra_table(*r.symbol);
  out << "jacobi: " << (check_jacobi(*r.symbol).empty() ? "ok" : "FAILED") << "\n";
  return kExitOk;
}

int cmd_prolong(const JobSpec& job, std::ostream& out) {
  const AlgebraInput a = resolve_algebra(job);
  const int cap = job.cap.value_or(3);
  const DerivationSubalgebra g0 = make_g0(a.g, job.g0);
  const ProlongTower t = build_tower(a.g, g0, cap, job.method);
  print_header(out, Json{{"algebra", a.source},
                         {"g0", job.g0 + " (dim " + std::to_string(g0.dim()) + ")"},
                         {"method", method_name(job.method)},
                         {"cap", cap}});
  out << tower_table(t) << tower_labels(t);
  if (cap >= std::max(3, t.depth())) {
    const DerivedSeriesReport d = derived_series_report(t);
    out << "dim g/[g,g]: " << d.abelianization_dim() << " (degrees <= " << d.abelianization_max_degree << ")\n";
    out << "dim g1/[g1,g1]: " << d.second_dim() << " (degrees <= " << d.second_max_degree << ")\n";
  }
  write_json(job.json_path, tower_to_json(t));
  return t.jacobi().ok() ? kExitOk : kExitCheckFailed;
}

struct CohomologyRun {
  AlgebraInput input;
  DerivationSubalgebra g0;
  Range range;
  TowerPtr tower;
  CohomologyReport report;
};

CohomologyRun run_cohomology(const JobSpec& job, int s) {
  AlgebraInput a = resolve_algebra(job);
  JobSpec j = job;
  j.s = s;
  const Range range = cohomology_range(j, a.g, 4);
  DerivationSubalgebra g0 = make_g0(a.g, job.g0);
  auto t = std::make_shared<const ProlongTower>(build_tower(a.g, g0, range.cap, job.method));
  CohomologyReport rep = cohomology(t, s, range.lo, range.hi, job.parallel);
  return {std::move(a), std::move(g0), range, t, std::move(rep)};
}

void print_cohomology(const JobSpec& job, const CohomologyRun& c, std::ostream& out) {
  print_header(out, Json{{"algebra", c.input.source},
                         {"g0", job.g0 + " (dim " + std::to_string(c.g0.dim()) + ")"},
                         {"method", method_name(job.method)},
                         {"tower dims", "degrees " + std::to_string(c.tower->min_degree()) + ".." +
                                            std::to_string(c.tower->cap()) + ": " + ints(c.tower->dims())},
                         {"jacobi", c.tower->jacobi().ok() ? "ok" : "FAILED"}});
  out << "H^" << c.report.s << " by order:\n" << cohomology_table(c.report);
}

int cmd_cohomology(const JobSpec& job, std::ostream& out) {
  const CohomologyRun c = run_cohomology(job, job.s);
  print_cohomology(job, c, out);
  write_json(job.json_path, cohomology_to_json(c.report));
  return c.tower->jacobi().ok() ? kExitOk : kExitCheckFailed;
}

int cmd_flat_check(const JobSpec& job, std::ostream& out) {
  const CohomologyRun c = run_cohomology(job, 2);
  print_cohomology(job, c, out);
  std::vector<std::string> nonzero;
  for (const auto& b : c.report.table)
    if (b.dim_cohomology() != 0) nonzero.push_back(std::to_string(b.order));
  const bool flat = nonzero.empty();
  if (flat) out << "flat up to order " << c.report.order_max << "\n";
  else {
    std::string orders;
    for (const auto& o : nonzero) orders += (orders.empty() ? "" : ", ") + o;
    out << "not flat: structure functions at order " << orders << "\n";
  }
  Json j = cohomology_to_json(c.report);
  j["flat"] = flat;
  write_json(job.json_path, j);
  return c.tower->jacobi().ok() ? kExitOk : kExitCheckFailed;
}

// ---- reproduction suites --------------------------------------------------

bool same_constants(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (Index i = 0; i < a.dim(); ++i)
    if (a.degree(i) != b.degree(i)) return false;
  return a.structure_constants() == b.structure_constants();
}

Matrix stack_rows(const std::vector<Vector>& rows, Index cols) {
  Matrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

// Fields realizing the engel_symbol basis y1..y4: d1, X-1, D3, d4.
std::vector<LabeledField> engel_negative_fields() {
  std::vector<LabeledField> out;
  for (const auto& f : engel_basis(-1)) out.push_back(f);
  const std::vector<std::string> order{"d1", "X-1", "D3", "d4"};
  std::vector<LabeledField> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto it = std::find_if(out.begin(), out.end(), [&](const LabeledField& f) { return f.label == order[k]; });
    sorted.push_back({"y" + std::to_string(k + 1), it->field, it->degree});
  }
  return sorted;
}

std::vector<PolyVectorField> fields_only(const std::vector<LabeledField>& fs) {
  std::vector<PolyVectorField> out;
  for (const auto& f : fs) out.push_back(f.field);
  return out;
}

Suite engel_suite(bool parallel) {
  Suite s{"engel", {}, {}, Json::object()};
  const GradedLieAlgebra g = engel_symbol();
  const DerivationSubalgebra der0 = derivations_of_degree(g, 0);
  const auto negative = engel_negative_fields();
  const auto neg_fields = fields_only(negative);

  // Tower dimensions and derived series of the table algebra.
  const ProlongTower t6 = build_tower(g, der0, 6);
  const std::vector<Index> table_dims{1, 1, 2, 3, 1, 1, 1, 1, 1, 1};
  s.add("tower dims -3..6 (der0, cap 6)", t6.dims() == table_dims, dims_string(table_dims), dims_string(t6.dims()));
  s.add("tower jacobi", t6.jacobi().ok(), "ok", t6.jacobi().ok() ? "ok" : t6.jacobi().violations.front());
  const DerivedSeriesReport ds = derived_series_report(t6);
  const auto basis0 = engel_basis(0);
  auto field_of = [&](const std::string& label) {
    return std::find_if(basis0.begin(), basis0.end(), [&](const LabeledField& f) { return f.label == label; })->field;
  };
  const PolyVectorField e = field_of("E"), h = field_of("H");
  const Vector ce = tower_coordinates(t6, neg_fields, e, 0), ch = tower_coordinates(t6, neg_fields, h, 0);
  const Subspace& comm0 = ds.derived.at(0);
  const bool eh_outside = sum(comm0, Subspace::span(stack_rows({ce, ch}, ce.size()))).dim() == comm0.dim() + 2;
  s.add("dim e/[e,e] (classes of E, H)", ds.abelianization_dim() == 2 && eh_outside, "2, E and H independent mod [e,e]",
        std::to_string(ds.abelianization_dim()) + ", E and H " + (eh_outside ? "" : "not ") + "independent mod [e,e]");
  std::string second_at;
  for (const auto& p : ds.second)
    if (p.dim_quotient()) second_at += (second_at.empty() ? "" : " ") + std::to_string(p.degree) + ":" + std::to_string(p.dim_quotient());
  Vector y1 = Vector::Zero(2);
  y1(0) = 1;
  bool y1_class = false;
  for (const auto& p : ds.second)
    if (p.degree == -1 && p.dim_quotient() == 1) y1_class = ds.derived.at(-1).contains(y1);
  s.add("dim e1/[e1,e1] (class of d1)", ds.second_dim() == 1 && y1_class, "1 in degree -1",
        std::to_string(ds.second_dim()) + (second_at.empty() ? "" : " (degree:dim " + second_at + ")"));

  // Structure functions.
  auto t5 = std::make_shared<const ProlongTower>(build_tower(g, der0, 5));
  const CohomologyReport h2 = cohomology(t5, 2, -1, 6, parallel);
  std::vector<Index> expected_h, observed_h;
  for (const auto& b : h2.table) {
    expected_h.push_back(b.order == 2 ? 2 : 0);
    observed_h.push_back(b.dim_cohomology());
  }
  s.add("dim H^2 orders -1..6 (cap 5)", expected_h == observed_h, dims_string(expected_h), dims_string(observed_h));
  s.data["cohomology"] = cohomology_to_json(h2);

  // The two listed cocycles at order 2.
  Cochain c1 = zero_cochain(t5, 2, 2);
  add_term(c1, {0, 1}, tower_coordinates(*t5, neg_fields, e + h, 0));
  Cochain c2 = zero_cochain(t5, 2, 2);
  add_term(c2, {3, 2}, Vector::Constant(1, Rational(1)));
  const std::vector<std::pair<std::string, const Cochain*>> reps{{"y1*^y2* (x) (E+H)", &c1}, {"y4*^y3* (x) y4", &c2}};
  const std::vector<Purity> expected_purity{Purity::pure, Purity::mixed};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& [label, c] = reps[i];
    const CocycleCheck v = verify_cocycle(*c);
    const Cochain d = ce_differential(*c);
    s.add(label + " is a cocycle", v.is_cocycle, "d = 0", v.is_cocycle ? "d = 0" : "d = " + format_cochain(d));
    s.add(label + " is not a coboundary", !v.is_coboundary, "not in B^2", v.is_coboundary ? "in B^2" : "not in B^2");
    if (v.is_cocycle) {
      const Purity p = purity(*c);
      s.add(label + " purity", p == expected_purity[i], to_string(expected_purity[i]), to_string(p));
    } else {
      s.add(label + " purity", false, to_string(expected_purity[i]), "undefined (not a cocycle)");
    }
  }
  const bool indep = independent_modulo_coboundaries({c1, c2});
  s.add("listed cocycles independent mod B^2", indep, "independent", indep ? "independent" : "not independent cocycles");

  // The table as vector fields.
  const PfaffSystem sys = engel_system();
  const auto basis4 = engel_basis(4);
  std::string bad;
  for (const auto& f : basis4)
    if (!preserves_pfaff(f.field, sys)) bad += (bad.empty() ? "" : " ") + f.label;
  s.add("engel_basis(4) preserves the system", bad.empty(), "all", bad.empty() ? "all" : "fails for " + bad);
  std::vector<Index> table_counts, solved_counts;
  for (int k = -3; k <= 4; ++k) {
    table_counts.push_back(static_cast<Index>(
        std::count_if(basis4.begin(), basis4.end(), [k](const LabeledField& f) { return f.degree == k; })));
    solved_counts.push_back(static_cast<Index>(preserving_fields(sys, engel_weights(), k).size()));
  }
  s.add("preserving fields per weight -3..4 match the table", table_counts == solved_counts, dims_string(table_counts),
        dims_string(solved_counts));
  std::string model_obs;
  bool model_ok = false;
  try {
    model_ok = same_constants(graded_model(negative), g);
    model_obs = model_ok ? "identical constants" : "different constants";
  } catch (const NonClosureError& ex) {
    model_obs = ex.what();
  }
  s.add("graded model of d1, X-1, D3, d4 equals engel_symbol", model_ok, "identical constants", model_obs);

  // Subalgebra spanned by the listed fields, for the record.
  std::map<int, std::vector<Vector>> rows;
  std::map<int, std::vector<std::string>> labels;
  for (const auto& f : engel_basis(5))
    if (f.degree >= 0) {
      rows[f.degree].push_back(tower_coordinates(*t5, neg_fields, f.field, f.degree));
      labels[f.degree].push_back(f.label);
    }
  std::map<int, Matrix> pieces;
  for (const auto& [m, r] : rows) pieces[m] = stack_rows(r, t5->dim(m));
  auto sub = std::make_shared<const ProlongTower>(restrict_tower(*t5, pieces, labels));
  const CohomologyReport sub_h2 = cohomology(sub, 2, -1, 6, parallel);
  std::vector<Index> sub_h;
  for (const auto& b : sub_h2.table) sub_h.push_back(b.dim_cohomology());
  s.notes.push_back("full tower dims -3..6: " + ints(t6.dims()));
  s.notes.push_back("table subalgebra dims -3..5: " + ints(sub->dims()) + ", jacobi " +
                    (sub->jacobi().ok() ? "ok" : "FAILED"));
  s.notes.push_back("table subalgebra dim H^2 orders -1..6: " + ints(sub_h));
  s.notes.push_back("preserving fields per weight -3..4: " + ints(solved_counts));
  s.data["table_subalgebra_cohomology"] = cohomology_to_json(sub_h2);
  return s;
}

Suite contact_suite(const JobSpec& job) {
  const int r = job.r;
  if (r < 1) throw std::invalid_argument("--r must be >= 1");
  Suite s{"contact", {}, {}, Json::object()};
  const GradedLieAlgebra g = heisenberg(r);
  const DerivationSubalgebra der0 = derivations_of_degree(g, 0);
  const Index expected_g0 = static_cast<Index>(r * (2 * r + 1) + 1);
  s.add("dim g0 = dim (der heis(" + std::to_string(r) + "))_0", der0.dim() == expected_g0, std::to_string(expected_g0),
        std::to_string(der0.dim()));
  const std::pair<int, int> orders = job.orders.value_or(r == 1 ? std::pair{0, 6} : std::pair{0, 4});
  JobSpec j = job;
  j.orders = orders;
  const Range range = cohomology_range(j, g, orders.second);
  auto t = std::make_shared<const ProlongTower>(build_tower(g, der0, range.cap));
  s.add("tower jacobi", t->jacobi().ok(), "ok", t->jacobi().ok() ? "ok" : t->jacobi().violations.front());
  const CohomologyReport h2 = cohomology(t, 2, range.lo, range.hi, job.parallel);
  std::vector<Index> observed, expected;
  for (const auto& b : h2.table) {
    observed.push_back(b.dim_cohomology());
    expected.push_back(0);
  }
  s.add("dim H^2 orders " + std::to_string(range.lo) + ".." + std::to_string(range.hi) + " (cap " +
            std::to_string(range.cap) + ")",
        observed == expected, dims_string(expected), dims_string(observed));
  const GradedLieAlgebra sym = symbol_algebra(Distribution::from_pfaff(contact_system(r)), origin(2 * r + 1));
  s.add("symbol of the contact system equals heis(" + std::to_string(r) + ")", same_constants(sym, g),
        "identical constants", same_constants(sym, g) ? "identical constants" : "different constants");
  s.notes.push_back("tower dims " + std::to_string(t->min_degree()) + ".." + std::to_string(t->cap()) + ": " +
                    ints(t->dims()));
  s.data["cohomology"] = cohomology_to_json(h2);
  return s;
}

int print_suite(const Suite& s, const std::string& json_path, std::ostream& out) {
  out << "suite: " << s.name << "\n";
  for (const auto& c : s.checks) {
    out << (c.ok ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.observed;
    if (!c.ok) out << " (expected " << c.expected << ")";
    out << "\n";
  }
  for (const auto& n : s.notes) out << "note: " << n << "\n";
  const auto failed = std::count_if(s.checks.begin(), s.checks.end(), [](const Check& c) { return !c.ok; });
  out << "result: " << (failed ? "FAILED (" + std::to_string(failed) + " of " + std::to_string(s.checks.size()) + " checks)"
                               : "ok (" + std::to_string(s.checks.size()) + " checks)")
      << "\n";
  Json checks = Json::array();
  for (const auto& c : s.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"expected", c.expected}, {"observed", c.observed}});
  Json j{{"schema", "ncurv.verify/1"}, {"suite", s.name}, {"ok", s.ok()}, {"checks", checks}, {"notes", s.notes}};
  for (const auto& [k, v] : s.data.items()) j[k] = v;
  write_json(json_path, j);
  return s.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "symbol") return Command::symbol;
  if (name == "prolong") return Command::prolong;
  if (name == "cohomology") return Command::cohomology;
  if (name == "verify-engel") return Command::verify_engel;
  if (name == "verify-contact") return Command::verify_contact;
  if (name == "flat-check") return Command::flat_check;
  return std::nullopt;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::symbol: return "symbol";
    case Command::prolong: return "prolong";
    case Command::cohomology: return "cohomology";
    case Command::verify_engel: return "verify-engel";
    case Command::verify_contact: return "verify-contact";
    case Command::flat_check: return "flat-check";
  }
  return "?";
}

std::pair<int, int> parse_orders(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("orders must look like LO..HI, got '" + text + "'");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo_s = text.substr(0, dots), hi_s = text.substr(dots + 2);
    const int lo = std::stoi(lo_s, &used_lo), hi = std::stoi(hi_s, &used_hi);
    if (used_lo != lo_s.size() || used_hi != hi_s.size()) throw std::invalid_argument("trailing characters");
    if (lo > hi) throw std::invalid_argument("empty range");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("orders must look like LO..HI with LO <= HI, got '" + text + "'");
  }
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.cap && *job.cap < 0) throw std::invalid_argument("--cap must be >= 0");
    switch (job.command) {
      case Command::symbol: return cmd_symbol(job, out, err);
      case Command::prolong: return cmd_prolong(job, out);
      case Command::cohomology: return cmd_cohomology(job, out);
      case Command::flat_check: return cmd_flat_check(job, out);
      case Command::verify_engel: return print_suite(engel_suite(job.parallel), job.json_path, out);
      case Command::verify_contact: return print_suite(contact_suite(job), job.json_path, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ncurv
