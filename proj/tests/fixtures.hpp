#pragma once

// Shared worked-example inputs used across the test suites.

#include "sonc/polynomial.hpp"

namespace fixtures {

using sonc::Polynomial;

inline Polynomial motzkin() {
  return Polynomial::parse("1 + x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2", 2);
}

inline Polynomial homogenized_motzkin() {
  return Polynomial::parse("x3^6 + x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2*x3^2", 3);
}

// f = 6 + x^2y^6 + 2x^4y^6 + x^8y^2 - 1.2x^2y^3 - 0.85x^3y^5 - 0.9x^4y^3 - 0.73x^5y^2 - 1.14x^7y^2
inline Polynomial tri1_f() {
  return Polynomial::parse(
      "6 + x1^2*x2^6 + 2*x1^4*x2^6 + x1^8*x2^2 - 1.2*x1^2*x2^3 - 0.85*x1^3*x2^5 "
      "- 0.9*x1^4*x2^3 - 0.73*x1^5*x2^2 - 1.14*x1^7*x2^2",
      2);
}

// f = 1 + 3x^2y^6 + 2x^6y^2 + 6x^2y^2 - xy^2 - 2x^2y - 3x^3y^3
inline Polynomial tri2_f() {
  return Polynomial::parse(
      "1 + 3*x1^2*x2^6 + 2*x1^6*x2^2 + 6*x1^2*x2^2 - x1*x2^2 - 2*x1^2*x2 - 3*x1^3*x2^3", 2);
}

// f = 1 + x1^4 + x2^2 + x1^2 x2^4 + x1^4 x2^4 - x1 x2 - x1 x2^2 - x1^2 x2^3 - x1^3 x2^3
inline Polynomial tri3_f() {
  return Polynomial::parse(
      "1 + x1^4 + x2^2 + x1^2*x2^4 + x1^4*x2^4 - x1*x2 - x1*x2^2 - x1^2*x2^3 - x1^3*x2^3", 2);
}

// Constrained fixtures.
inline Polynomial worked3_f() { return Polynomial::parse("1 + 2*x1^2*x2^4 + 1/2*x1^3*x2^2", 2); }
inline Polynomial worked3_g() { return Polynomial::parse("1/3 - x1^6*x2^2", 2); }

inline Polynomial c2_f() { return Polynomial::parse("1 + x1^4*x2^2 + x1*x2", 2); }
inline Polynomial c2_g() { return Polynomial::parse("1/2 + x1^2*x2^4 - x1^2*x2^6", 2); }

inline Polynomial c3_f() {
  return Polynomial::parse("1 + x1^2*x3^2 + x2^2*x3^2 + x1^2*x2^2 - 8*x1*x2*x3", 3);
}
inline Polynomial c3_g() {
  return Polynomial::parse("x1^2*x2*x3 + x1*x2^2*x3 + x1^2*x2^2 - 2 + x1*x2*x3", 3);
}

inline Polynomial sphere_minus_one() { return Polynomial::parse("x1^2 + x2^2 + x3^2 - 1", 3); }

inline Polynomial tri4_f() { return Polynomial::parse("1 + x1^4 + x1^2*x2^4", 2); }
inline Polynomial tri4_g() {
  return Polynomial::parse("1/2 + x1^2*x2 - x1^6*x2^4 - x1^3*x2^3", 2);
}

}  // namespace fixtures
