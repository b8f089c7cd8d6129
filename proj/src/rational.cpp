#include "ncurv/rational.hpp"

#include <cctype>
#include <stdexcept>

using Eigen::Index;

namespace ncurv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = slash == std::string_view::npos ? Integer(1) : parse_integer(text.substr(slash + 1), text);
  if (den.is_zero()) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_combination(const Vector& coeffs, const std::vector<std::string>& labels) {
  std::string out;
  for (Index i = 0; i < coeffs.size(); ++i) {
    const Rational& c = coeffs(i);
    if (c.is_zero()) continue;
    const std::string& name = labels.at(static_cast<std::size_t>(i));
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (mag != 1) out += to_string(mag) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace ncurv
