#include "ncurv/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncurv {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return "(" + join(s, ",") + ")";
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  return j.at(key);
}

void check_schema(const Json& j, const char* expected) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != expected)
    throw std::invalid_argument("expected schema " + std::string(expected) + ", got " + j.at("schema").dump());
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Vector vector_from_json(const Json& j, Index expected_size) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  if (static_cast<Index>(j.size()) != expected_size)
    throw std::invalid_argument("vector has length " + std::to_string(j.size()) + ", expected " +
                                std::to_string(expected_size));
  Vector v(expected_size);
  for (Index i = 0; i < expected_size; ++i) {
    const Json& e = j[static_cast<std::size_t>(i)];
    if (e.is_string()) v(i) = parse_rational(e.get<std::string>());
    else if (e.is_number_integer()) v(i) = Rational(e.get<long long>());
    else throw std::invalid_argument("rational entries must be strings \"p/q\" or integers");
  }
  return v;
}

Json algebra_to_json(const GradedLieAlgebra& g) {
  Json basis = Json::array();
  for (const auto& b : g.basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}});
  Json brackets = Json::array();
  for (const auto& [key, value] : g.structure_constants())
    brackets.push_back({{"i", key.first}, {"j", key.second}, {"value", vector_to_json(value)}});
  return {{"schema", kAlgebraSchema}, {"basis", basis}, {"brackets", brackets}};
}

GradedLieAlgebra algebra_from_json(const Json& j) {
  check_schema(j, kAlgebraSchema);
  std::vector<BasisElement> basis;
  for (const auto& b : require(j, "basis")) basis.push_back({require(b, "label").get<std::string>(), require(b, "degree").get<int>()});
  GradedLieAlgebra::BracketTable table;
  const Index n = static_cast<Index>(basis.size());
  if (j.contains("brackets"))
    for (const auto& b : j.at("brackets")) {
      const Index i = require(b, "i").get<Index>(), k = require(b, "j").get<Index>();
      if (i < 0 || k < 0 || i >= n || k >= n) throw std::invalid_argument("bracket index out of range");
      if (table.count({i, k}) || table.count({k, i}))
        throw std::invalid_argument("bracket (" + std::to_string(i) + ", " + std::to_string(k) + ") given twice");
      table[{i, k}] = vector_from_json(require(b, "value"), n);
    }
  return GradedLieAlgebra(std::move(basis), table);
}

DistributionInput distribution_input_from_json(const Json& j) {
  check_schema(j, kDistributionSchema);
  DistributionInput in;
  if (j.contains("n_vars")) in.n_vars = j.at("n_vars").get<int>();
  if (j.contains("pfaff")) in.pfaff = j.at("pfaff").get<std::string>();
  if (j.contains("fields"))
    for (const auto& f : j.at("fields")) in.fields.push_back(f.get<std::string>());
  if (in.pfaff.has_value() == !in.fields.empty())
    throw std::invalid_argument("a distribution job needs exactly one of 'pfaff' and 'fields'");
  if (j.contains("points"))
    for (const auto& p : j.at("points")) {
      auto pts = parse_points(p.get<std::string>());
      in.points.insert(in.points.end(), pts.begin(), pts.end());
    }
  return in;
}

Json distribution_input_to_json(const DistributionInput& in) {
  Json j{{"schema", kDistributionSchema}};
  if (in.n_vars) j["n_vars"] = *in.n_vars;
  if (in.pfaff) j["pfaff"] = *in.pfaff;
  else j["fields"] = in.fields;
  if (!in.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : in.points) pts.push_back(format_point(p));
    j["points"] = pts;
  }
  return j;
}

Distribution make_distribution(const DistributionInput& in) {
  if (in.pfaff) return Distribution::from_pfaff(parse_pfaff(*in.pfaff, in.n_vars));
  std::optional<int> n = in.n_vars;
  if (!n) {
    // Infer a common variable count from the largest index over all fields.
    int m = 0;
    for (const auto& f : in.fields) m = std::max(m, parse_field(f).n_vars());
    n = m;
  }
  std::vector<PolyVectorField> fields;
  for (const auto& f : in.fields) fields.push_back(parse_field(f, n));
  return Distribution(std::move(fields));
}

Json growth_to_json(const GrowthVector& g) {
  return {{"point", format_point(g.point)},
          {"growth", g.dims},
          {"level_dims", g.level_dims},
          {"depth", g.depth()},
          {"completely_nonholonomic", g.completely_nonholonomic()},
          {"nonholonomic", g.nonholonomic()},
          {"stall_then_growth", g.stall_then_growth()}};
}

Json distribution_report_to_json(const Distribution& dist, const RegularityReport& scan,
                                 const std::optional<GradedLieAlgebra>& symbol) {
  Json fields = Json::array();
  for (const auto& f : dist.spanning_fields()) fields.push_back(f.to_string());
  Json points = Json::array();
  for (const auto& g : scan.growth) points.push_back(growth_to_json(g));
  Json j{{"schema", kDistributionReportSchema},
         {"n_vars", dist.n_vars()},
         {"rank", dist.rank()},
         {"spanning_fields", fields},
         {"points", points},
         {"regular_on_sample", scan.regular()},
         {"disagreements", scan.disagreements}};
  j["symbol"] = symbol ? algebra_to_json(*symbol) : Json(nullptr);
  return j;
}

Json tower_to_json(const ProlongTower& t) {
  Json g0 = Json::array();
  for (Index i = 0; i < t.g0().dim(); ++i) {
    Json rows = Json::array();
    const Matrix& m = t.g0().basis[static_cast<std::size_t>(i)];
    for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
    g0.push_back({{"label", t.g0().labels[static_cast<std::size_t>(i)]}, {"matrix", rows}});
  }
  Json comps = Json::array();
  for (int m = t.min_degree(); m <= t.cap(); ++m)
    comps.push_back({{"degree", m}, {"dim", t.dim(m)}, {"labels", t.labels(m)}});
  Json brackets = Json::array();
  for (int a = t.min_degree(); a <= t.cap(); ++a)
    for (int b = a; b <= t.cap(); ++b) {
      if (a + b > t.cap() || a + b < t.min_degree()) continue;
      for (Index i = 0; i < t.dim(a); ++i) {
        const Matrix& ad = t.ad(a, i, b);
        for (Index j = (a == b ? i + 1 : 0); j < t.dim(b); ++j) {
          const Vector v = ad.col(j);
          if (v.isZero()) continue;
          brackets.push_back({{"a", a}, {"i", i}, {"b", b}, {"j", j}, {"value", vector_to_json(v)}});
        }
      }
    }
  const auto& jac = t.jacobi();
  return {{"schema", kTowerSchema},
          {"negative", algebra_to_json(t.negative())},
          {"g0", g0},
          {"method", t.method() == ProlongMethod::cartan ? "cartan" : "shchepochkina"},
          {"cap", t.cap()},
          {"components", comps},
          {"brackets", brackets},
          {"jacobi",
           {{"ok", jac.ok()}, {"triples_checked", jac.triples_checked}, {"verified_max_degree", jac.verified_max_degree},
            {"violations", jac.violations}}}};
}

Json cohomology_to_json(const CohomologyReport& r) {
  Json table = Json::array();
  for (const auto& b : r.table) {
    Json reps = Json::array();
    for (const auto& c : b.representatives) reps.push_back(format_cochain(c));
    table.push_back({{"order", b.order},
                     {"dim_cochains", b.dim_cochains},
                     {"dim_cocycles", b.dim_cocycles},
                     {"dim_coboundaries", b.dim_coboundaries},
                     {"dim_cohomology", b.dim_cohomology()},
                     {"representatives", reps}});
  }
  return {{"schema", kCohomologySchema},
          {"s", r.s},
          {"order_min", r.order_min},
          {"order_max", r.order_max},
          {"cap", r.cap},
          {"total_dim", r.total_dim()},
          {"table", table}};
}

std::string format_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      // First column left-aligned, numbers right-aligned.
      if (c == 0) line += r[c] + std::string(width[c] - r[c].size(), ' ');
      else line += std::string(width[c] - r[c].size(), ' ') + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string tower_table(const ProlongTower& t) {
  std::vector<std::string> deg{"degree"}, dim{"dim"};
  for (int m = t.min_degree(); m <= t.cap(); ++m) {
    deg.push_back(std::to_string(m));
    dim.push_back(std::to_string(t.dim(m)));
  }
  std::string out = format_columns({deg, dim});
  const auto& j = t.jacobi();
  out += "jacobi: " + std::string(j.ok() ? "ok" : "FAILED") + " on " + std::to_string(j.triples_checked) +
         " triples, verified through degree " + std::to_string(j.verified_max_degree) + "\n";
  for (const auto& v : j.violations) out += "  " + v + "\n";
  return out;
}

std::string tower_labels(const ProlongTower& t) {
  std::vector<std::vector<std::string>> rows;
  for (int m = t.min_degree(); m <= t.cap(); ++m) rows.push_back({"g" + std::to_string(m), join(t.labels(m), " ")});
  std::string out;
  for (const auto& r : rows) out += r[0] + ": " + (r[1].empty() ? "-" : r[1]) + "\n";
  return out;
}

std::string cohomology_table(const CohomologyReport& r) {
  std::vector<std::vector<std::string>> rows{{"order", "dim C", "dim Z", "dim B", "dim H"}};
  for (const auto& b : r.table)
    rows.push_back({std::to_string(b.order), std::to_string(b.dim_cochains), std::to_string(b.dim_cocycles),
                    std::to_string(b.dim_coboundaries), std::to_string(b.dim_cohomology())});
  std::string out = format_columns(rows);
  out += "total dim H^" + std::to_string(r.s) + ": " + std::to_string(r.total_dim()) + " (verified range: orders " +
         std::to_string(r.order_min) + ".." + std::to_string(r.order_max) + ", cap " + std::to_string(r.cap) + ")\n";
  for (const auto& b : r.table)
    for (std::size_t i = 0; i < b.representatives.size(); ++i)
      out += "  order " + std::to_string(b.order) + " #" + std::to_string(i + 1) + ": " +
             format_cochain(b.representatives[i]) + "\n";
  return out;
}

std::string algebra_table(const GradedLieAlgebra& g) {
  std::string out;
  for (int d : g.degrees()) {
    std::vector<std::string> labels;
    for (Index i : g.indices_of_degree(d)) labels.push_back(g.label(i));
    out += "degree " + std::to_string(d) + ": " + join(labels, " ") + "\n";
  }
  for (const auto& [key, value] : g.structure_constants())
    out += "[" + g.label(key.first) + ", " + g.label(key.second) + "] = " + format_element(g, value) + "\n";
  return out;
}

std::string growth_line(const GrowthVector& g) {
  std::string out = format_point(g.point) + ": growth " + join_ints(g.dims) + " depth " + std::to_string(g.depth());
  if (g.completely_nonholonomic()) out += " completely nonholonomic";
  else out += " n_d = " + std::to_string(g.dims.empty() ? 0 : g.dims.back()) + " < " + std::to_string(g.n_vars);
  if (!g.nonholonomic() && !g.stall_then_growth()) out += " (integrable)";
  if (g.stall_then_growth()) out += " stall-then-growth, levels " + join_ints(g.level_dims);
  return out;
}

}  // namespace ncurv
