#ifndef NCURV_DISTRIBUTION_HPP
#define NCURV_DISTRIBUTION_HPP

#include "ncurv/graded_lie.hpp"
#include "ncurv/polynomial.hpp"

#include <string>
#include <vector>

namespace ncurv {

using Point = std::vector<Rational>;

class Distribution {
 public:
  /// Throws std::invalid_argument for an empty list or mixed variable counts.
  explicit Distribution(std::vector<PolyVectorField> spanning);

  /// Kernel of the system, one polynomial field per non-pivot variable. The
  /// pivot columns are the first column set (lexicographic) whose minor is a
  /// nonzero constant, falling back to the first nonzero minor; fields are
  /// obtained by Cramer's rule and divided by the minor when it is constant.
  static Distribution from_pfaff(const PfaffSystem& p);

  int n_vars() const { return m_fields.front().n_vars(); }
  int rank() const { return static_cast<int>(m_fields.size()); }
  const std::vector<PolyVectorField>& spanning_fields() const { return m_fields; }

  /// Iterated brackets of the spanning fields: level 1 is the spanning list,
  /// level i holds [Y_j, W] for W in level i-1 (j outer), with zero fields
  /// and fields Q-dependent on earlier ones of the same level dropped.
  /// Cached; levels are built up to `level`.
  const std::vector<PolyVectorField>& bracket_level(int level) const;

 private:
  std::vector<PolyVectorField> m_fields;
  mutable std::vector<std::vector<PolyVectorField>> m_levels;
};

struct GrowthVector {
  Point point;
  /// n_1 < n_2 < ... up to the first level where the flag stops growing.
  std::vector<int> dims;
  /// Pointwise dims of D_1 .. D_{n_vars+1} without stopping at a stall.
  std::vector<int> level_dims;
  int n_vars = 0;

  int depth() const { return static_cast<int>(dims.size()); }
  bool completely_nonholonomic() const { return !dims.empty() && dims.back() == n_vars; }
  /// Depth differs from 1, i.e. the distribution is not integrable at the point.
  bool nonholonomic() const { return depth() != 1; }
  /// The flag stalls at some level and grows again later, a sign the point
  /// is singular.
  bool stall_then_growth() const;
};

/// Throws std::invalid_argument when the spanning fields are dependent at
/// the point or the point has the wrong dimension.
GrowthVector flag_at_point(const Distribution& dist, const Point& point);

struct RegularityReport {
  std::vector<GrowthVector> growth;
  /// Indices into `growth` whose dims differ from growth[0] or that stall
  /// and then grow.
  std::vector<std::size_t> disagreements;

  bool regular() const { return disagreements.empty(); }
};

RegularityReport regularity_scan(const Distribution& dist, const std::vector<Point>& points);

/// Graded algebra ⊕ D_i/D_{i-1} at the point. Basis: the spanning fields in
/// degree -1 (labels y1, y2, ...), then in degree -i the first brackets
/// [Y_j, W] (lexicographic, W a basis field of degree -(i-1)) independent
/// modulo D_{i-1}. Throws std::runtime_error when a bracket of
/// representatives does not fall into the expected flag level (irregular
/// point) or the flag stalls and then grows.
GradedLieAlgebra symbol_algebra(const Distribution& dist, const Point& point);

/// Representative fields of symbol_algebra(dist, point)'s basis, in order.
std::vector<PolyVectorField> symbol_representatives(const Distribution& dist, const Point& point);

/// The origin of the distribution's coordinate space.
Point origin(int n_vars);

std::string format_point(const Point& p);

}  // namespace ncurv

#endif  // NCURV_DISTRIBUTION_HPP
