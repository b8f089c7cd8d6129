#include "ncurv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ncurv {

Polynomial Polynomial::constant(int n_vars, const Rational& c) {
  Polynomial p(n_vars);
  p.add_term(Exponent(static_cast<std::size_t>(n_vars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int i) {
  if (i < 0 || i >= n_vars) throw std::out_of_range("variable index out of range");
  Exponent e(static_cast<std::size_t>(n_vars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

std::optional<Rational> Polynomial::as_constant() const {
  if (m_terms.empty()) return Rational(0);
  if (m_terms.size() == 1) {
    const auto& [e, c] = *m_terms.begin();
    if (std::all_of(e.begin(), e.end(), [](int a) { return a == 0; })) return c;
  }
  return std::nullopt;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : m_terms) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != m_n) throw std::invalid_argument("exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = m_terms.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) m_terms.erase(it);
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial out(m_n);
  for (const auto& [e, c] : m_terms) {
    const int a = e.at(static_cast<std::size_t>(i));
    if (a == 0) continue;
    Exponent f = e;
    --f[static_cast<std::size_t>(i)];
    out.add_term(f, c * a);
  }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != m_n) throw std::invalid_argument("point dimension does not match variable count");
  Rational sum = 0;
  for (const auto& [e, c] : m_terms) {
    Rational term = c;
    for (int j = 0; j < m_n; ++j)
      for (int k = 0; k < e[static_cast<std::size_t>(j)]; ++k) term *= point[static_cast<std::size_t>(j)];
    sum += term;
  }
  return sum;
}

std::optional<int> Polynomial::weighted_degree(const std::vector<int>& weights) const {
  if (static_cast<int>(weights.size()) != m_n) throw std::invalid_argument("weight count does not match variable count");
  std::optional<int> deg;
  for (const auto& [e, c] : m_terms) {
    int s = 0;
    for (int j = 0; j < m_n; ++j) s += e[static_cast<std::size_t>(j)] * weights[static_cast<std::size_t>(j)];
    if (deg && *deg != s) return std::nullopt;
    deg = s;
  }
  return deg;
}

void Polynomial::check(const Polynomial& o) const {
  if (o.m_n != m_n) throw std::invalid_argument("polynomials in different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check(o);
  for (const auto& [e, c] : o.m_terms) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check(o);
  for (const auto& [e, c] : o.m_terms) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    m_terms.clear();
    return *this;
  }
  for (auto& [e, v] : m_terms) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check(b);
  Polynomial out(a.m_n);
  for (const auto& [ea, ca] : a.m_terms)
    for (const auto& [eb, cb] : b.m_terms) {
      Exponent e = ea;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      out.add_term(e, ca * cb);
    }
  return out;
}

namespace {

// "x1^2*x3" for the monomial part; empty for the constant monomial.
std::string monomial_string(const Exponent& e) {
  std::string s;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(j + 1);
    if (e[j] > 1) s += "^" + std::to_string(e[j]);
  }
  return s;
}

// Appends "c*m*sym" with sign handling; sym may be empty.
void append_term(std::string& out, const Rational& c, const std::string& mono, const std::string& sym) {
  const bool neg = c < 0;
  const Rational mag = neg ? Rational(-c) : c;
  if (out.empty()) out += neg ? "-" : "";
  else out += neg ? " - " : " + ";
  std::string body = mono;
  if (!sym.empty()) body += (body.empty() ? "" : "*") + sym;
  if (body.empty()) {
    out += to_string(mag);
    return;
  }
  if (mag == 1) {
    out += body;
  } else if (denominator(mag) != 1 && numerator(mag) == 1 && !mono.empty()) {
    // x1^2/2*d3 reads better than 1/2*x1^2*d3
    out += mono + "/" + denominator(mag).str() + (sym.empty() ? "" : "*" + sym);
  } else {
    out += to_string(mag) + "*" + body;
  }
}

// Terms ordered by ascending total degree, then by descending exponent vector.
std::vector<std::pair<Exponent, Rational>> display_order(const Polynomial& p) {
  std::vector<std::pair<Exponent, Rational>> t(p.terms().begin(), p.terms().end());
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int x : a.first) da += x;
    for (int x : b.first) db += x;
    if (da != db) return da < db;
    return a.first > b.first;
  });
  return t;
}

std::string combination_string(const std::vector<Polynomial>& coeffs, const std::string& prefix) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (const auto& [e, c] : display_order(coeffs[i]))
      append_term(out, c, monomial_string(e), prefix + std::to_string(i + 1));
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Polynomial::to_string() const {
  std::string out;
  for (const auto& [e, c] : display_order(*this)) append_term(out, c, monomial_string(e), "");
  return out.empty() ? "0" : out;
}

PolyVectorField::PolyVectorField(int n_vars) : coeffs(static_cast<std::size_t>(n_vars), Polynomial(n_vars)) {}

PolyVectorField PolyVectorField::partial(int n_vars, int i) {
  PolyVectorField x(n_vars);
  x.coeffs.at(static_cast<std::size_t>(i)) = Polynomial::constant(n_vars, 1);
  return x;
}

bool PolyVectorField::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial PolyVectorField::apply(const Polynomial& f) const {
  if (f.n_vars() != n_vars()) throw std::invalid_argument("field and polynomial in different variable counts");
  Polynomial out(n_vars());
  for (int i = 0; i < n_vars(); ++i) {
    const Polynomial& c = coeffs[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    out += c * f.derivative(i);
  }
  return out;
}

Vector PolyVectorField::evaluate(const std::vector<Rational>& point) const {
  Vector v(n_vars());
  for (int i = 0; i < n_vars(); ++i) v(i) = coeffs[static_cast<std::size_t>(i)].evaluate(point);
  return v;
}

std::optional<int> PolyVectorField::weighted_degree(const std::vector<int>& weights) const {
  std::optional<int> deg;
  for (int i = 0; i < n_vars(); ++i) {
    const Polynomial& c = coeffs[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    auto d = c.weighted_degree(weights);
    if (!d) return std::nullopt;
    const int fd = *d - weights[static_cast<std::size_t>(i)];
    if (deg && *deg != fd) return std::nullopt;
    deg = fd;
  }
  return deg;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
  if (o.n_vars() != n_vars()) throw std::invalid_argument("fields in different variable counts");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
  if (o.n_vars() != n_vars()) throw std::invalid_argument("fields in different variable counts");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

PolyVectorField& PolyVectorField::operator*=(const Rational& c) {
  for (auto& p : coeffs) p *= c;
  return *this;
}

std::string PolyVectorField::to_string() const { return combination_string(coeffs, "d"); }

OneForm::OneForm(int n_vars) : coeffs(static_cast<std::size_t>(n_vars), Polynomial(n_vars)) {}

bool OneForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Vector OneForm::evaluate(const std::vector<Rational>& point) const {
  Vector v(n_vars());
  for (int i = 0; i < n_vars(); ++i) v(i) = coeffs[static_cast<std::size_t>(i)].evaluate(point);
  return v;
}

OneForm& OneForm::operator+=(const OneForm& o) {
  if (o.n_vars() != n_vars()) throw std::invalid_argument("forms in different variable counts");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  if (o.n_vars() != n_vars()) throw std::invalid_argument("forms in different variable counts");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

std::string OneForm::to_string() const { return combination_string(coeffs, "dx"); }

std::string PfaffSystem::to_string() const {
  std::string out;
  for (const auto& f : forms) out += (out.empty() ? "" : "; ") + f.to_string();
  return out;
}

int WeightedGrading::field_monomial_degree(const Exponent& e, int i) const {
  int s = 0;
  for (std::size_t j = 0; j < e.size(); ++j) s += e[j] * weights.at(j);
  return s - weights.at(static_cast<std::size_t>(i));
}

namespace {

enum class Mode { polynomial, field, form };

// Value of a subexpression: scalar part plus coefficients of d-symbols.
struct Linear {
  Polynomial scalar;
  std::vector<Polynomial> d;
  bool has_d = false;
};

class Parser {
 public:
  Parser(std::string_view text, Mode mode, int n) : m_text(text), m_mode(mode), m_n(n) {}

  Linear parse() {
    Linear v = expr();
    skip();
    if (m_pos != m_text.size()) fail("unexpected '" + std::string(1, m_text[m_pos]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " + std::to_string(m_pos) + " in '" + std::string(m_text) +
                                "': " + what);
  }

  void skip() {
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) ++m_pos;
  }

  bool eat(char c) {
    skip();
    if (m_pos < m_text.size() && m_text[m_pos] == c) {
      ++m_pos;
      return true;
    }
    return false;
  }

  std::string digits() {
    const std::size_t start = m_pos;
    while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) ++m_pos;
    if (start == m_pos) fail("expected digits");
    return std::string(m_text.substr(start, m_pos - start));
  }

  int index() {
    const std::string s = digits();
    if (s.size() > 6) fail("index too large");
    const int i = std::stoi(s);
    if (i < 1 || i > m_n) fail("variable index " + s + " outside 1.." + std::to_string(m_n));
    return i - 1;
  }

  Linear zero() const {
    return Linear{Polynomial(m_n), std::vector<Polynomial>(static_cast<std::size_t>(m_n), Polynomial(m_n)), false};
  }

  Linear scalar(Polynomial p) const {
    Linear v = zero();
    v.scalar = std::move(p);
    return v;
  }

  static void add(Linear& a, const Linear& b, const Rational& sign) {
    a.scalar += b.scalar * sign;
    for (std::size_t i = 0; i < a.d.size(); ++i) a.d[i] += b.d[i] * sign;
    a.has_d = a.has_d || b.has_d;
  }

  Linear multiply(const Linear& a, const Linear& b) {
    if (a.has_d && b.has_d) fail("product of two differential symbols");
    const Linear& lin = a.has_d ? a : b;
    const Polynomial& f = a.has_d ? b.scalar : a.scalar;
    Linear out = zero();
    out.scalar = lin.scalar * f;
    for (std::size_t i = 0; i < out.d.size(); ++i) out.d[i] = lin.d[i] * f;
    out.has_d = lin.has_d;
    return out;
  }

  Linear expr() {
    Linear v = zero();
    Rational sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    add(v, term(), sign);
    while (true) {
      if (eat('+')) add(v, term(), 1);
      else if (eat('-')) add(v, term(), -1);
      else return v;
    }
  }

  Linear term() {
    Linear v = factor();
    while (true) {
      if (eat('*')) {
        v = multiply(v, factor());
      } else if (eat('/')) {
        const Linear q = factor();
        auto c = q.scalar.as_constant();
        if (q.has_d || !c || c->is_zero()) fail("division only by a nonzero constant");
        v = multiply(v, scalar(Polynomial::constant(m_n, Rational(1) / *c)));
      } else {
        return v;
      }
    }
  }

  Linear factor() {
    Linear base = primary();
    if (!eat('^')) return base;
    skip();
    const std::string e = digits();
    if (base.has_d) fail("power of a differential symbol");
    if (e.size() > 4) fail("exponent too large");
    Polynomial p = Polynomial::constant(m_n, 1);
    for (int k = 0; k < std::stoi(e); ++k) p = p * base.scalar;
    return scalar(std::move(p));
  }

  Linear primary() {
    skip();
    if (m_pos >= m_text.size()) fail("unexpected end of input");
    const char c = m_text[m_pos];
    if (c == '(') {
      ++m_pos;
      Linear v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return scalar(Polynomial::constant(m_n, Rational(Integer(digits()))));
    }
    if (c == 'x') {
      ++m_pos;
      return scalar(Polynomial::variable(m_n, index()));
    }
    if (c == 'd') {
      ++m_pos;
      const bool dx = m_pos < m_text.size() && m_text[m_pos] == 'x';
      if (dx) ++m_pos;
      if (m_mode == Mode::polynomial) fail("differential symbol in a polynomial");
      if (m_mode == Mode::field && dx) fail("'dx' in a vector field (use dN)");
      if (m_mode == Mode::form && !dx) fail("'dN' in a 1-form (use dxN)");
      Linear v = zero();
      v.d[static_cast<std::size_t>(index())] = Polynomial::constant(m_n, 1);
      v.has_d = true;
      return v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view m_text;
  Mode m_mode;
  int m_n;
  std::size_t m_pos = 0;
};

int max_index(std::string_view text) {
  int n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' && text[i] != 'd') continue;
    std::size_t j = i + 1;
    if (text[i] == 'd' && j < text.size() && text[j] == 'x') ++j;
    std::size_t k = j;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    if (k > j && k - j <= 6) n = std::max(n, std::stoi(std::string(text.substr(j, k - j))));
  }
  return n;
}

Linear parse_linear(std::string_view text, Mode mode, std::optional<int> n_vars) {
  const int n = n_vars ? *n_vars : max_index(text);
  if (n <= 0) throw std::invalid_argument("no variables in '" + std::string(text) + "' and no variable count given");
  Linear v = Parser(text, mode, n).parse();
  if (mode != Mode::polynomial && !v.scalar.is_zero())
    throw std::invalid_argument("term without a differential symbol in '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = text.find(sep, start);
    std::string_view part = text.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start);
    if (part.find_first_not_of(" \t\r\n") != std::string_view::npos) out.push_back(part);
    if (p == std::string_view::npos) return out;
    start = p + 1;
  }
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<int> n_vars) {
  return parse_linear(text, Mode::polynomial, n_vars.value_or(std::max(1, max_index(text)))).scalar;
}

PolyVectorField parse_field(std::string_view text, std::optional<int> n_vars) {
  PolyVectorField x;
  x.coeffs = parse_linear(text, Mode::field, n_vars).d;
  return x;
}

OneForm parse_form(std::string_view text, std::optional<int> n_vars) {
  OneForm a;
  a.coeffs = parse_linear(text, Mode::form, n_vars).d;
  return a;
}

PfaffSystem parse_pfaff(std::string_view text, std::optional<int> n_vars) {
  const auto parts = split(text, ';');
  int n = n_vars.value_or(0);
  if (!n_vars)
    for (auto p : parts) n = std::max(n, max_index(p));
  PfaffSystem sys{n, {}};
  for (auto p : parts) sys.forms.push_back(parse_form(p, n));
  return sys;
}

std::vector<PolyVectorField> parse_fields(std::string_view text, std::optional<int> n_vars) {
  const auto parts = split(text, ';');
  int n = n_vars.value_or(0);
  if (!n_vars)
    for (auto p : parts) n = std::max(n, max_index(p));
  std::vector<PolyVectorField> out;
  for (auto p : parts) out.push_back(parse_field(p, n));
  return out;
}

std::vector<std::vector<Rational>> parse_points(std::string_view text) {
  std::vector<std::vector<Rational>> out;
  for (auto part : split(text, ';')) {
    const auto open = part.find('(');
    const auto close = part.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      throw std::invalid_argument("point must be written as (a,b,...): '" + std::string(part) + "'");
    std::vector<Rational> pt;
    for (auto c : split(part.substr(open + 1, close - open - 1), ',')) pt.push_back(parse_rational(c));
    if (pt.empty()) throw std::invalid_argument("empty point");
    out.push_back(std::move(pt));
  }
  if (out.empty()) throw std::invalid_argument("no points given");
  return out;
}

}  // namespace ncurv
