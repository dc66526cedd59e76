#pragma once

#include "sonc/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace sonc {

/// Exponent vector of one monomial; length is the instance-wide variable count.
using Exponent = std::vector<int>;

int degree(const Exponent& e);
bool all_even(const Exponent& e);

/// Total degree first, then lexicographic. The library's canonical term order.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

std::string exponent_to_string(const Exponent& e);

struct Term {
  Rational coeff;
  Exponent exponent;
};

/// c * x^a with c > 0 and a even in every entry.
bool is_monomial_square(const Term& t);

/// Sparse multivariate polynomial with exact rational coefficients.
/// Immutable in spirit: mutate only through add_term during construction.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLexLess>;

  explicit Polynomial(int n = 0) : n_(n) {}

  static Polynomial parse(const std::string& text, int n);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Merges into an existing exponent; drops the term if the sum is zero.
  void add_term(const Exponent& e, const Rational& c);

  Rational coeff(const Exponent& e) const;
  std::vector<Exponent> support() const;

  double evaluate(std::span<const double> point) const;

  Polynomial scale_exponents(int k) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;

  std::string render() const;

  bool operator==(const Polynomial& other) const {
    return n_ == other.n_ && terms_ == other.terms_;
  }

 private:
  int n_;
  TermMap terms_;
};

}  // namespace sonc
