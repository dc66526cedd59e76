#pragma once

#include "sonc/geometry.hpp"

#include <utility>
#include <vector>

namespace sonc {

/// Simplex support with at most one tail term.
struct CircuitPolynomial {
  int n = 0;
  std::vector<Exponent> simplex_vertices;
  std::vector<Rational> vertex_coeffs;  // all > 0
  bool has_tail = false;
  Exponent tail_exponent;
  Rational tail_coeff;
  std::vector<Rational> lambda;  // barycentric of the tail
  std::vector<int> nz;

  static CircuitPolynomial from_st_form(const STForm& st);
  static CircuitPolynomial make(int n, std::vector<Exponent> vertices, std::vector<Rational> coeffs,
                                const Exponent& beta, const Rational& beta_coeff);
  Polynomial to_polynomial() const;
};

/// Theta and the exact (vertex coefficient, lambda) pairs it is built from,
/// so callers can re-verify the weighted geometric mean independently.
struct CircuitNumber {
  double value = 0.0;
  std::vector<std::pair<Rational, Rational>> factors;  // (f_alpha(j), lambda_j), j in nz
};

CircuitNumber circuit_number(const CircuitPolynomial& c);

/// Exact decision with a relative slack tau on the boundary comparison.
bool is_nonnegative(const CircuitPolynomial& c, double tau = 1e-9);

CircuitPolynomial scale_by_even_monomial(const CircuitPolynomial& c, const Rational& b,
                                         const std::vector<int>& alpha);

}  // namespace sonc
