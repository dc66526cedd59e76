#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sonc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

/// q^e by binary exponentiation; e may be negative (then q must be nonzero).
Rational rat_pow(const Rational& q, long e);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "p/q", an integer, or a decimal literal such as "1.217" (exact).
/// Throws InvalidInput on malformed text.
Rational parse_rational(const std::string& text);

/// "p" or "p/q".
std::string format_rational(const Rational& q);

}  // namespace sonc
