#ifndef NCURV_COHOMOLOGY_HPP
#define NCURV_COHOMOLOGY_HPP

// Chevalley-Eilenberg cohomology of g- with coefficients in a truncated
// prolong tower, split by order.
//
// A cochain of order K assigns to a strictly increasing tuple (b_1 < ... < b_s)
// of g- basis indices a value in g_{K + deg b_1 + ... + deg b_s}. The
// differential is the standard one,
//
//   (δf)(x_0, ..., x_s) = Σ_i (-1)^i [x_i, f(..., x̂_i, ...)]
//                       + Σ_{i<j} (-1)^{i+j} f([x_i, x_j], ..., x̂_i, ..., x̂_j, ...),
//
// so δc(v) = [v, c] for a 0-cochain. For abelian g- this is (-1)^{s+1} times
// the Spencer differential Σ_i (-1)^i [f(..., v̂_{s+1-i}, ...), v_{s+1-i}];
// that factor is the only normalization choice made here.

#include "ncurv/prolongation.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ncurv {

using TowerPtr = std::shared_ptr<const ProlongTower>;

/// One tensor block of a cochain space: the argument tuple and the tower
/// component its value lives in.
struct CochainBlock {
  std::vector<Index> args;
  int target_degree = 0;
  Index offset = 0;
  Index size = 0;
};

/// Layout of the homogeneous cochains C^s of a given order.
class CochainSpace {
 public:
  /// Throws std::invalid_argument when some block targets a degree above the
  /// tower cap; the message names the minimal sufficient cap.
  CochainSpace(const ProlongTower& tower, int s, int order);

  int s() const { return m_s; }
  int order() const { return m_order; }
  Index dim() const { return m_dim; }
  const std::vector<CochainBlock>& blocks() const { return m_blocks; }
  /// Block for a strictly increasing tuple, or nullptr if its target degree
  /// is below the tower.
  const CochainBlock* find(const std::vector<Index>& args) const;

  /// Largest target degree over all tuples, i.e. the smallest cap for which
  /// this space is fully represented.
  static int required_cap(const GradedLieAlgebra& g, int s, int order);

 private:
  int m_s = 0;
  int m_order = 0;
  Index m_dim = 0;
  std::vector<CochainBlock> m_blocks;
  std::map<std::vector<Index>, std::size_t> m_lookup;
};

struct Cochain {
  TowerPtr tower;
  int s = 0;
  int order = 0;
  /// Coordinates in CochainSpace(*tower, s, order).
  Vector values;

  CochainSpace space() const { return CochainSpace(*tower, s, order); }
  /// Value on the tuple `args` (any order; the alternating sign is applied),
  /// in coordinates of the target component.
  Vector value(std::vector<Index> args) const;
  bool is_zero() const { return values.isZero(); }
};

/// Zero cochain of the given shape.
Cochain zero_cochain(TowerPtr tower, int s, int order);

/// Adds coeff * (e_{args}^* ⊗ value) to c. `args` may be unsorted: the tuple
/// is sorted and the permutation sign applied. Throws when an argument
/// repeats or `value` has the wrong length for the target component.
void add_term(Cochain& c, std::vector<Index> args, const Vector& value, const Rational& coeff = Rational(1));

/// Basis of C^s at this order, one unit cochain per coordinate.
std::vector<Cochain> cochain_basis(TowerPtr tower, int s, int order);

/// Matrix of δ: C^s → C^{s+1} at a fixed order.
Matrix differential_matrix(const ProlongTower& tower, int s, int order);

Cochain ce_differential(const Cochain& c);

/// Matrix of the g0 element e_index acting on C^s at this order:
/// (D·f)(x_1..x_s) = [D, f(x_1..x_s)] - Σ_i f(x_1, .., [D, x_i], .., x_s).
Matrix g0_action_matrix(const ProlongTower& tower, int s, int order, Index g0_index);

struct CohomologyBlock {
  int order = 0;
  Index dim_cochains = 0;
  Index dim_cocycles = 0;
  Index dim_coboundaries = 0;
  std::vector<Cochain> representatives;

  Index dim_cohomology() const { return dim_cocycles - dim_coboundaries; }
};

struct CohomologyReport {
  int s = 0;
  int order_min = 0;
  int order_max = 0;
  int cap = 0;
  std::vector<CohomologyBlock> table;

  const CohomologyBlock& at(int order) const;
  Index total_dim() const;
};

/// H^s per order over [order_min, order_max]. Blocks are computed
/// concurrently when `parallel` is set; the report is assembled by order.
/// Throws std::invalid_argument when the tower cap is below
/// order_max - s + 1.
CohomologyReport cohomology(TowerPtr tower, int s, int order_min, int order_max, bool parallel = true);

struct CocycleCheck {
  bool is_cocycle = false;
  bool is_coboundary = false;
};

CocycleCheck verify_cocycle(const Cochain& c);

enum class Purity { pure, mixed };

/// Pure iff the coboundary space at c's order has zero projection onto the
/// blocks (argument-degree patterns) where c is supported. Throws
/// std::invalid_argument when c is not a cocycle.
Purity purity(const Cochain& c);

/// True when every cochain in `cs` is a cocycle and they are linearly
/// independent modulo coboundaries at their (common) order.
bool independent_modulo_coboundaries(const std::vector<Cochain>& cs);

/// "y1*^y2* (x) (E+H) + y3*^y4* (x) (-y4)".
std::string format_cochain(const Cochain& c);

const char* to_string(Purity p);

}  // namespace ncurv

#endif  // NCURV_COHOMOLOGY_HPP
