#ifndef NCURV_VF_CALCULUS_HPP
#define NCURV_VF_CALCULUS_HPP

#include "ncurv/graded_lie.hpp"
#include "ncurv/polynomial.hpp"
#include "ncurv/prolongation.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ncurv {

struct LabeledField {
  std::string label;
  PolyVectorField field;
  int degree = 0;
};

PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y);

OneForm differential(const Polynomial& f);
/// L_X α = d(α(X)) + i_X dα, in coordinates
/// (L_X α)_j = X(α_j) + Σ_i α_i ∂_j X^i.
OneForm lie_derivative(const PolyVectorField& x, const OneForm& alpha);
Polynomial contract(const OneForm& alpha, const PolyVectorField& x);

/// Determinant of a square polynomial matrix (cofactor expansion).
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

/// True when beta lies in the span of p's forms over the field of rational
/// functions, i.e. every (k+1)-minor of [α_1; ..; α_k; β] vanishes
/// identically. Throws std::invalid_argument when the forms are dependent.
bool in_form_span(const OneForm& beta, const PfaffSystem& p);

/// Every L_X α_i lies in the span of the system.
bool preserves_pfaff(const PolyVectorField& x, const PfaffSystem& p);

/// All weight-homogeneous monomial fields x^a ∂_i of the given degree.
std::vector<PolyVectorField> monomial_fields(const WeightedGrading& w, int degree);

/// Basis (canonical, over the monomial coordinates) of the polynomial fields
/// of the given weighted degree preserving p.
std::vector<PolyVectorField> preserving_fields(const PfaffSystem& p, const WeightedGrading& w, int degree);

/// dx4 - x3*dx1; dx3 - x2*dx1.
PfaffSystem engel_system();
/// Weights (1, 1, 2, 3).
WeightedGrading engel_weights();
/// ∂4; D3; ∂1, X-1; E, H, X0; X1 .. X_max_degree, tagged with their degrees.
std::vector<LabeledField> engel_basis(int max_degree);
/// X_n = x1^{n+1} ∂2 + x1^{n+2}/(n+2) ∂3 + x1^{n+3}/((n+2)(n+3)) ∂4, n >= -1.
/// The ∂4 coefficient is the one that makes X_n preserve engel_system().
PolyVectorField engel_x(int n);

/// dx1 + Σ_i (x_{1+i} dx_{1+r+i} - x_{1+r+i} dx_{1+i}) on 2r+1 variables
/// (t = x1, p_i = x_{1+i}, q_i = x_{1+r+i}).
PfaffSystem contact_system(int r);
WeightedGrading contact_weights(int r);
/// p_i = ∂_{p_i} + q_i ∂_t, q_i = ∂_{q_i} - p_i ∂_t and z = [p_1, q_1] = -2∂_t.
std::vector<LabeledField> contact_negative_fields(int r);

/// Thrown by graded_model when a bracket leaves the span of the given fields.
class NonClosureError : public std::runtime_error {
 public:
  NonClosureError(std::string a, std::string b, const std::string& what)
      : std::runtime_error(what), first(std::move(a)), second(std::move(b)) {}
  std::string first, second;
};

/// Structure constants of the given homogeneous fields read off their
/// brackets. A bracket landing above the largest listed degree is dropped
/// when `truncate` is set and must vanish otherwise.
GradedLieAlgebra graded_model(const std::vector<LabeledField>& fields, bool truncate = false);

/// Coordinates in tower component `degree` of a homogeneous field x, given
/// fields realizing the g- basis of the tower (in basis order, with brackets
/// reproducing its structure constants). Non-negative degrees are resolved
/// through x's action [x, W_b] on those fields. Throws std::domain_error when
/// x has no image in the tower at that degree.
Vector tower_coordinates(const ProlongTower& tower, const std::vector<PolyVectorField>& negative,
                         const PolyVectorField& x, int degree);

}  // namespace ncurv

#endif  // NCURV_VF_CALCULUS_HPP
