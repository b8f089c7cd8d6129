#ifndef NCURV_RATIONAL_HPP
#define NCURV_RATIONAL_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace ncurv {

/// Exact rational scalar backed by GMP. Values are always kept in lowest
/// terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Rational>;
using Vector = VectorX<Rational>;

/// Parses "p", "-p" or "p/q" (whitespace around the parts is allowed).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Linear combination in the given labels: "E+H", "2*y3-1/2*y4", "0".
std::string format_combination(const Vector& coeffs, const std::vector<std::string>& labels);

template <typename Scalar>
bool is_zero(const Scalar& s) {
  return s == Scalar(0);
}
inline bool is_zero(const Rational& q) { return q.is_zero(); }

}  // namespace ncurv

#endif  // NCURV_RATIONAL_HPP
