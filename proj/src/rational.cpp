#include "sonc/rational.hpp"

#include "sonc/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace sonc {

Rational rat_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (invert && q == 0) throw InvalidInput("0 cannot be raised to a negative power");
  Rational base = q, acc = 1;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return invert ? Rational(1) / acc : acc;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite double has no rational value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  if (exp > 0) r *= rat_pow(Rational(2), exp);
  if (exp < 0) r /= rat_pow(Rational(2), -exp);
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty rational literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::string& out) {
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
  };
  std::string intpart;
  digits(intpart);
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::string q;
    digits(q);
    if (intpart.empty() || q.empty() || i != text.size())
      throw InvalidInput("malformed rational literal '" + text + "'");
    Rational r{BigInt(intpart), BigInt(q)};
    if (neg) r = -r;
    return r;
  }
  std::string fracpart;
  if (i < text.size() && text[i] == '.') {
    ++i;
    digits(fracpart);
  }
  if ((intpart.empty() && fracpart.empty()) || i != text.size())
    throw InvalidInput("malformed numeric literal '" + text + "'");
  Rational r{BigInt(intpart.empty() ? "0" : intpart)};
  if (!fracpart.empty()) {
    Rational scale = rat_pow(Rational(10), static_cast<long>(fracpart.size()));
    r += Rational(BigInt(fracpart)) / scale;
  }
  if (neg) r = -r;
  return r;
}

std::string format_rational(const Rational& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

}  // namespace sonc
