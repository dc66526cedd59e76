#pragma once

#include "sonc/exact_linalg.hpp"
#include "sonc/polynomial.hpp"

#include <optional>
#include <vector>

namespace sonc {

/// The geometric skeleton of a support set: hull vertices, tail points and
/// the necessary conditions for nonnegativity on them.
struct SupportAnalysis {
  std::vector<Exponent> points;    // A, graded-lex
  std::vector<Exponent> vertices;  // V(A)
  std::vector<Exponent> delta_a;   // A \ V(A)
  std::vector<Exponent> delta_f;   // tails carried by non-monomial-square terms
  bool clubsuit_ok = false;
  int dimension = 0;  // affine dimension of A
};

struct STForm {
  int n = 0;
  std::vector<Exponent> simplex_vertices;  // alpha(0..r), graded-lex
  std::vector<Rational> vertex_coeffs;
  struct Tail {
    Exponent beta;
    Rational coeff;
    std::vector<Rational> lambda;  // barycentric wrt simplex_vertices
    std::vector<int> nz;
    bool monomial_square = false;
  };
  std::vector<Tail> tails;  // all of Delta(A); Delta(f) = the non-square ones

  int r() const { return static_cast<int>(simplex_vertices.size()) - 1; }
  std::vector<const Tail*> delta_f_tails() const;
  std::optional<int> vertex_index(const Exponent& e) const;
};

struct Triangulation {
  std::vector<Exponent> points;
  std::vector<std::vector<int>> simplices;  // index tuples into points
};

/// Extreme points of conv(points), exact, graded-lex order.
std::vector<Exponent> hull_vertices(const std::vector<Exponent>& points);

SupportAnalysis analyze_support(const Polynomial& f);

/// Exact barycentric coordinates of beta wrt an affinely independent simplex.
std::vector<Rational> barycentric(const Exponent& beta, const std::vector<Exponent>& simplex);

/// Barycentric coordinates allowing beta outside the simplex (coordinates may
/// be negative); nullopt when beta is outside the affine hull.
std::optional<std::vector<Rational>> barycentric_unclamped(const Exponent& beta,
                                                           const std::vector<Exponent>& simplex);

STForm st_form(const Polynomial& f);

/// Placing triangulation, graded-lex insertion order. Every input point ends
/// up as a vertex of the cells containing it.
Triangulation triangulate_squares(const std::vector<Exponent>& points);

/// Exact r! * volume of the simplex spanned by the given points (0 if degenerate).
Rational simplex_volume_factorial(const std::vector<Exponent>& simplex);

}  // namespace sonc
