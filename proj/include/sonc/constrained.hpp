#pragma once

#include "sonc/gp.hpp"
#include "sonc/gp_solver.hpp"
#include "sonc/unconstrained.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sonc {

struct ConstrainedProblem {
  Polynomial f;
  std::vector<Polynomial> constraints;  // K = {g_i >= 0}
  int n() const { return f.n(); }
  int s() const { return static_cast<int>(constraints.size()); }
};

/// Coefficient of G(mu) at one exponent: value(mu) = c[0] + sum_i mu_i c[i]
/// with c[i] = -g_{i,beta} and g_0 = -f, mu_0 = 1.
struct LinearForm {
  std::vector<Rational> c;  // size s+1

  double value(const std::vector<double>& mu) const;
  std::vector<int> plus() const;   // indices with c[i] > 0 (feed G^+)
  std::vector<int> minus() const;  // indices with c[i] < 0 (feed G^-)
  bool is_zero() const;
};

struct GStructure {
  int n = 0;
  int s = 0;
  std::vector<Exponent> union_support;
  std::vector<Exponent> vertices;  // V(A), graded-lex; alpha(0..r)
  std::vector<LinearForm> vertex_forms;
  std::vector<Exponent> delta_g;  // tails ever active, graded-lex
  std::vector<LinearForm> tail_forms;
  std::vector<std::vector<Rational>> tail_lambda;  // wrt `vertices`
  std::vector<std::vector<int>> tail_nz;
  std::vector<Exponent> pruned;  // interior monomial squares dropped entirely
};

GStructure build_g_structure(const ConstrainedProblem& p);

/// Program (with variables a_{beta,j} for all j = 1..r, b_beta, mu):
/// geometric when every non-target vertex form has exactly one positive term.
GeometricProgram build_constrained_gp(const GStructure& gs, int target_index);

/// Signed variant: always buildable, solved by sequential condensation.
SignomialProgram build_constrained_snp(const GStructure& gs, int target_index);

enum class ConstrainedStrategy { Gp, Snp, Auto };

struct ConstrainedBound {
  double bound = 0.0;
  double gamma = 0.0;
  std::vector<double> mu;  // optimizer of the program, numerically-zero entries snapped
  bool heuristic = false;
  std::string program_kind;
  std::optional<SoncBound> certificate_run;  // f_sonc of the concrete G(mu*)
  std::optional<SolveResult> program_solve;
};

ConstrainedBound lower_bound(const ConstrainedProblem& p,
                             ConstrainedStrategy strategy = ConstrainedStrategy::Auto,
                             const SolverSettings& settings = default_sonc_settings());

/// G(mu)_sonc for a concrete mu >= 0; -inf when G(mu) is not an ST-polynomial.
double fixed_mu_bound(const ConstrainedProblem& p, const std::vector<double>& mu,
                      const SolverSettings& settings = default_sonc_settings());

/// Same, but with the full f_sonc result (certificate) when it exists.
std::optional<SoncBound> fixed_mu_eval(const ConstrainedProblem& p, const std::vector<double>& mu,
                                       const SolverSettings& settings = default_sonc_settings());

Polynomial assemble_g(const ConstrainedProblem& p, const std::vector<double>& mu);

}  // namespace sonc
