#ifndef NCURV_REPORT_HPP
#define NCURV_REPORT_HPP

// JSON serialization (schemas under docs/schemas) and plain-text tables.
// Rationals are written as "p" or "p/q" strings; all key orders are fixed so
// output is byte-stable.

#include "ncurv/cohomology.hpp"
#include "ncurv/distribution.hpp"
#include "ncurv/graded_lie.hpp"
#include "ncurv/polynomial.hpp"
#include "ncurv/prolongation.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ncurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kAlgebraSchema = "ncurv.algebra/1";
inline constexpr const char* kDistributionSchema = "ncurv.distribution/1";
inline constexpr const char* kDistributionReportSchema = "ncurv.distribution-report/1";
inline constexpr const char* kTowerSchema = "ncurv.tower/1";
inline constexpr const char* kCohomologySchema = "ncurv.cohomology/1";

Json vector_to_json(const Vector& v);
/// Throws std::invalid_argument on non-string entries or bad rationals.
Vector vector_from_json(const Json& j, Index expected_size);

/// {"schema", "basis": [{"label", "degree"}], "brackets": [{"i", "j", "value"}]}
/// with 0-based i < j and only nonzero brackets listed.
Json algebra_to_json(const GradedLieAlgebra& g);
/// Accepts the same layout; "schema" is optional. Brackets may use any i != j.
GradedLieAlgebra algebra_from_json(const Json& j);

/// A distribution job: either a Pfaff system or spanning fields in the
/// expression grammar, plus optional sample points.
struct DistributionInput {
  std::optional<int> n_vars;
  std::optional<std::string> pfaff;
  std::vector<std::string> fields;
  std::vector<Point> points;
};

DistributionInput distribution_input_from_json(const Json& j);
Json distribution_input_to_json(const DistributionInput& in);
/// Builds the distribution described by `in`.
Distribution make_distribution(const DistributionInput& in);

Json growth_to_json(const GrowthVector& g);
/// `symbol` is omitted (null) when the scan found the distribution irregular.
Json distribution_report_to_json(const Distribution& dist, const RegularityReport& scan,
                                 const std::optional<GradedLieAlgebra>& symbol);

Json tower_to_json(const ProlongTower& t);
Json cohomology_to_json(const CohomologyReport& r);

/// "degree  -3 -2 ..." / "dim  1 1 ..." rows and the Jacobi line.
std::string tower_table(const ProlongTower& t);
/// Basis labels per degree, one line per degree.
std::string tower_labels(const ProlongTower& t);
/// order / dim C / dim Z / dim B / dim H rows, the total and representatives.
std::string cohomology_table(const CohomologyReport& r);
/// Basis with degrees followed by the nonzero brackets, "[y1, y2] = y3".
std::string algebra_table(const GradedLieAlgebra& g);
/// "(0,0,0,0): growth (2,3,4) depth 3 completely nonholonomic".
std::string growth_line(const GrowthVector& g);

/// Right-aligned columns separated by two spaces.
std::string format_columns(const std::vector<std::vector<std::string>>& rows);

}  // namespace ncurv

#endif  // NCURV_REPORT_HPP
