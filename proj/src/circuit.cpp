#include "sonc/circuit.hpp"

#include "sonc/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>

namespace sonc {

CircuitPolynomial CircuitPolynomial::from_st_form(const STForm& st) {
  if (st.tails.size() > 1)
    throw InvalidInput("circuit polynomial admits at most one tail term, got " +
                       std::to_string(st.tails.size()));
  CircuitPolynomial c;
  c.n = st.n;
  c.simplex_vertices = st.simplex_vertices;
  c.vertex_coeffs = st.vertex_coeffs;
  if (!st.tails.empty()) {
    const auto& t = st.tails.front();
    c.has_tail = true;
    c.tail_exponent = t.beta;
    c.tail_coeff = t.coeff;
    c.lambda = t.lambda;
    c.nz = t.nz;
  }
  return c;
}

CircuitPolynomial CircuitPolynomial::make(int n, std::vector<Exponent> vertices,
                                          std::vector<Rational> coeffs, const Exponent& beta,
                                          const Rational& beta_coeff) {
  CircuitPolynomial c;
  c.n = n;
  c.simplex_vertices = std::move(vertices);
  c.vertex_coeffs = std::move(coeffs);
  for (const auto& fc : c.vertex_coeffs)
    if (fc <= 0) throw InvalidInput("circuit vertex coefficients must be strictly positive");
  c.has_tail = true;
  c.tail_exponent = beta;
  c.tail_coeff = beta_coeff;
  c.lambda = barycentric(beta, c.simplex_vertices);
  for (std::size_t j = 0; j < c.lambda.size(); ++j)
    if (c.lambda[j] != 0) c.nz.push_back(static_cast<int>(j));
  return c;
}

Polynomial CircuitPolynomial::to_polynomial() const {
  Polynomial p(n);
  for (std::size_t j = 0; j < simplex_vertices.size(); ++j)
    p.add_term(simplex_vertices[j], vertex_coeffs[j]);
  if (has_tail) p.add_term(tail_exponent, tail_coeff);
  return p;
}

CircuitNumber circuit_number(const CircuitPolynomial& c) {
  if (!c.has_tail) throw NoTailTerm("circuit number requires a tail term");
  CircuitNumber out;
  double log_theta = 0.0;
  for (int j : c.nz) {
    const Rational& fj = c.vertex_coeffs[j];
    const Rational& lj = c.lambda[j];
    out.factors.emplace_back(fj, lj);
    log_theta += to_double(lj) * (std::log(to_double(fj)) - std::log(to_double(lj)));
  }
  out.value = std::exp(log_theta);
  return out;
}

namespace {

// |t| <= Theta * (1 + tau), decided exactly by clearing the lambda denominators:
// |t|^L <= (1+tau)^L * prod (f_j / lambda_j)^(L*lambda_j) with L = lcm of denominators.
bool tail_within_theta(const CircuitPolynomial& c, const Rational& tau) {
  Rational abs_t = c.tail_coeff < 0 ? -c.tail_coeff : c.tail_coeff;
  if (abs_t == 0) return true;
  BigInt l(1);
  for (int j : c.nz) l = boost::multiprecision::lcm(l, den(c.lambda[j]));
  long big_l = l.convert_to<long>();
  Rational lhs = rat_pow(abs_t, big_l);
  Rational rhs = rat_pow(Rational(1) + tau, big_l);
  for (int j : c.nz) {
    long e = (c.lambda[j] * l).convert_to<long>();
    rhs *= rat_pow(c.vertex_coeffs[j] / c.lambda[j], e);
  }
  return lhs <= rhs;
}

}  // namespace

bool is_nonnegative(const CircuitPolynomial& c, double tau) {
  for (const auto& fc : c.vertex_coeffs)
    if (fc <= 0) return false;
  for (const auto& v : c.simplex_vertices)
    if (!all_even(v)) return false;
  if (!c.has_tail) return true;  // sum of monomial squares
  if (all_even(c.tail_exponent) && c.tail_coeff >= 0) return true;
  // Float prefilter; the exact comparison settles anything near the boundary.
  double theta = circuit_number(c).value;
  double abs_t = std::abs(to_double(c.tail_coeff));
  double slacked = theta * (1.0 + tau);
  if (abs_t <= slacked * (1.0 - 1e-6)) return true;
  if (abs_t >= slacked * (1.0 + 1e-6)) return false;
  return tail_within_theta(c, rational_from_double(tau));
}

CircuitPolynomial scale_by_even_monomial(const CircuitPolynomial& c, const Rational& b,
                                         const std::vector<int>& alpha) {
  if (b <= 0) throw InvalidInput("monomial factor must be positive");
  if (static_cast<int>(alpha.size()) != c.n)
    throw DimensionMismatch("shift vector length does not match variable count");
  for (int v : alpha)
    if (v % 2 != 0) throw InvalidInput("shift exponent must be even in every entry");
  auto shift = [&](const Exponent& e) {
    Exponent out(e);
    for (int i = 0; i < c.n; ++i) {
      out[i] += alpha[i];
      if (out[i] < 0)
        throw NegativeExponent("shift produces a negative exponent at " + exponent_to_string(out));
    }
    return out;
  };
  CircuitPolynomial out = c;
  for (auto& v : out.simplex_vertices) v = shift(v);
  for (auto& fc : out.vertex_coeffs) fc *= b;
  if (out.has_tail) {
    out.tail_exponent = shift(out.tail_exponent);
    out.tail_coeff *= b;
    // Barycentric coordinates are translation invariant; lambda and nz carry over.
  }
  return out;
}

}  // namespace sonc
