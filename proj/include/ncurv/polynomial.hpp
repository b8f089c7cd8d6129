#ifndef NCURV_POLYNOMIAL_HPP
#define NCURV_POLYNOMIAL_HPP

// Polynomials, vector fields and 1-forms in n variables x1..xn over Q, and a
// parser for their text form:
//
//   field:  "x1^2/2 * d3 + d2"       (dN is the partial derivative in xN)
//   form:   "dx4 - x3*dx1"           (dxN is the differential of xN)

#include "ncurv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncurv {

using Exponent = std::vector<int>;

class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(int n_vars) : m_n(n_vars) {}
  static Polynomial constant(int n_vars, const Rational& c);
  /// x_{i+1} (i is zero-based).
  static Polynomial variable(int n_vars, int i);
  static Polynomial monomial(Exponent e, const Rational& c = Rational(1));

  int n_vars() const { return m_n; }
  /// Nonzero terms only, ordered by exponent vector.
  const Terms& terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }
  std::optional<Rational> as_constant() const;
  int total_degree() const;

  /// Adds c * x^e, pruning a resulting zero.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial derivative(int i) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Σ a_j w_j over every monomial when they agree; nullopt otherwise or for 0.
  std::optional<int> weighted_degree(const std::vector<int>& weights) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.m_n == b.m_n && a.m_terms == b.m_terms;
  }

  /// "x1^2/2 - 3*x2*x3 + 1"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void check(const Polynomial& o) const;

  int m_n = 0;
  Terms m_terms;
};

/// Σ_i coeffs[i] ∂_{i+1}.
struct PolyVectorField {
  std::vector<Polynomial> coeffs;

  PolyVectorField() = default;
  explicit PolyVectorField(int n_vars);
  static PolyVectorField partial(int n_vars, int i);

  int n_vars() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
  /// X(f) = Σ X^i ∂_i f.
  Polynomial apply(const Polynomial& f) const;
  Vector evaluate(const std::vector<Rational>& point) const;
  /// deg(x^a ∂_i) = Σ a_j w_j - w_i, when all terms agree; nullopt for 0.
  std::optional<int> weighted_degree(const std::vector<int>& weights) const;

  PolyVectorField& operator+=(const PolyVectorField& o);
  PolyVectorField& operator-=(const PolyVectorField& o);
  PolyVectorField& operator*=(const Rational& c);
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
  friend PolyVectorField operator*(const Rational& c, PolyVectorField a) { return a *= c; }
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) { return a.coeffs == b.coeffs; }

  /// Same grammar as parse_field: "d2 + x1*d3 + x1^2/2*d4".
  std::string to_string() const;
};

/// Σ_i coeffs[i] dx_{i+1}.
struct OneForm {
  std::vector<Polynomial> coeffs;

  OneForm() = default;
  explicit OneForm(int n_vars);

  int n_vars() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
  Vector evaluate(const std::vector<Rational>& point) const;

  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.coeffs == b.coeffs; }

  std::string to_string() const;
};

struct PfaffSystem {
  int n_vars = 0;
  std::vector<OneForm> forms;

  std::string to_string() const;
};

struct WeightedGrading {
  std::vector<int> weights;

  int field_monomial_degree(const Exponent& e, int i) const;
  std::optional<int> degree(const PolyVectorField& x) const { return x.weighted_degree(weights); }
};

/// Parsers for the text grammar (see docs/expression_grammar.md). The number
/// of variables is n_vars when given, otherwise the largest index used.
/// Throw std::invalid_argument with the offending position on bad input.
Polynomial parse_polynomial(std::string_view text, std::optional<int> n_vars = std::nullopt);
PolyVectorField parse_field(std::string_view text, std::optional<int> n_vars = std::nullopt);
OneForm parse_form(std::string_view text, std::optional<int> n_vars = std::nullopt);
/// Forms separated by ';'.
PfaffSystem parse_pfaff(std::string_view text, std::optional<int> n_vars = std::nullopt);
/// Fields separated by ';'.
std::vector<PolyVectorField> parse_fields(std::string_view text, std::optional<int> n_vars = std::nullopt);

/// "(0,0,0,0);(1,1,1,1)" → points with rational coordinates.
std::vector<std::vector<Rational>> parse_points(std::string_view text);

}  // namespace ncurv

#endif  // NCURV_POLYNOMIAL_HPP
