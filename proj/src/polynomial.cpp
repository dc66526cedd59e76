#include "sonc/polynomial.hpp"

#include "sonc/errors.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sonc {

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool all_even(const Exponent& e) {
  for (int v : e)
    if (v % 2 != 0) return false;
  return true;
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::string exponent_to_string(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

bool is_monomial_square(const Term& t) { return t.coeff > 0 && all_even(t.exponent); }

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_)
    throw DimensionMismatch("exponent length " + std::to_string(e.size()) +
                            " does not match variable count " + std::to_string(n_));
  for (int v : e)
    if (v < 0) throw NegativeExponent("negative exponent in " + exponent_to_string(e));
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Exponent> Polynomial::support() const {
  std::vector<Exponent> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

namespace {

double ipow(double x, int k) {
  double acc = 1.0, base = x;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

}  // namespace

double Polynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != n_)
    throw DimensionMismatch("point length " + std::to_string(point.size()) +
                            " does not match variable count " + std::to_string(n_));
  // Kahan summation; term values can differ by many orders of magnitude.
  double sum = 0.0, comp = 0.0;
  for (const auto& [e, c] : terms_) {
    double v = to_double(c);
    for (int i = 0; i < n_; ++i) v *= ipow(point[i], e[i]);
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Polynomial Polynomial::scale_exponents(int k) const {
  if (k < 1) throw InvalidInput("exponent scale must be >= 1");
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    Exponent se(e);
    for (int& v : se) v *= k;
    out.add_term(se, c);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (n_ != other.n_) throw DimensionMismatch("adding polynomials of different variable counts");
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(n_);
  if (c == 0) return out;
  for (const auto& [e, k] : terms_) out.add_term(e, k * c);
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  int n;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(pos, msg); }

  std::string read_digits() {
    std::string out;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) out += text[pos++];
    return out;
  }

  // decimal or p/q, no sign (signs are term separators)
  Rational read_number() {
    skip_ws();
    std::size_t start = pos;
    std::string intpart = read_digits();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      std::string q = read_digits();
      if (intpart.empty() || q.empty()) fail("malformed rational coefficient");
      if (BigInt(q) == 0) fail("zero denominator");
      return Rational{BigInt(intpart), BigInt(q)};
    }
    std::string fracpart;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      fracpart = read_digits();
    }
    if (intpart.empty() && fracpart.empty()) {
      pos = start;
      fail("expected a number");
    }
    Rational r{BigInt(intpart.empty() ? "0" : intpart)};
    if (!fracpart.empty())
      r += Rational(BigInt(fracpart)) / rat_pow(Rational(10), static_cast<long>(fracpart.size()));
    return r;
  }

  // x<idx>[^<posint>]
  void read_factor(Exponent& e) {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'x') fail("expected variable factor 'x<idx>'");
    ++pos;
    std::size_t idx_pos = pos;
    std::string idx = read_digits();
    if (idx.empty()) fail("expected variable index after 'x'");
    long v = std::stol(idx);
    if (v < 1 || v > n) throw VariableOutOfRange(idx_pos, "variable x" + idx + " outside 1.." + std::to_string(n));
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::string p = read_digits();
      if (p.empty()) fail("expected positive integer exponent after '^'");
      power = std::stoi(p);
      if (power < 1) fail("exponent must be positive");
    }
    e[v - 1] += power;
  }

  void read_term(Polynomial& poly, bool negative) {
    skip_ws();
    Rational c(1);
    bool saw_coeff = false;
    if (peek() != 'x') {
      c = read_number();
      saw_coeff = true;
    }
    Exponent e(static_cast<std::size_t>(n), 0);
    bool saw_factor = false;
    if (!saw_coeff || peek() == '*' || peek() == 'x') {
      if (saw_coeff && peek() == '*') {
        ++pos;  // consume '*'
        skip_ws();
      }
      if (!saw_coeff || peek() == 'x') {
        read_factor(e);
        saw_factor = true;
        while (peek() == '*') {
          ++pos;
          read_factor(e);
        }
      }
    }
    if (!saw_coeff && !saw_factor) fail("expected a term");
    poly.add_term(e, negative ? -c : c);
  }

  Polynomial parse() {
    Polynomial poly(n);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos;
    }
    read_term(poly, negative);
    while (!at_end()) {
      char s = peek();
      if (s != '+' && s != '-') fail("expected '+' or '-' between terms");
      ++pos;
      read_term(poly, s == '-');
    }
    return poly;
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n) {
  if (n < 0) throw InvalidInput("variable count must be nonnegative");
  Parser p{text, 0, n};
  if (p.at_end()) throw SyntaxError(0, "empty polynomial text");
  return p.parse();
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars = degree(e) > 0;
    if (!has_vars || a != 1) {
      out << format_rational(a);
      if (has_vars) out << "*";
    }
    bool first_var = true;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

}  // namespace sonc
