#pragma once

#include "sonc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace sonc {

/// c * z1^a1 ... zm^am over positive variables. Exponents arise as ratios of
/// barycentric coordinates and are kept exact; the solver projects to double.
struct PosyMonomial {
  double coeff = 1.0;
  std::vector<Rational> exponents;
};

using Posynomial = std::vector<PosyMonomial>;

struct GeometricProgram {
  int num_vars = 0;
  std::vector<std::string> var_names;
  Posynomial objective;                       // empty means "minimize 0"
  std::vector<Posynomial> ineq_constraints;   // each p(z) <= 1, coefficients > 0
  std::vector<PosyMonomial> eq_constraints;   // each q(z) = 1, single monomials
};

/// Same shape; coefficients may be negative. Constraint meaning: s(z) <= 1.
struct SignomialProgram {
  int num_vars = 0;
  std::vector<std::string> var_names;
  Posynomial objective;
  std::vector<Posynomial> ineq_constraints;
  std::vector<PosyMonomial> eq_constraints;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericFailure };

std::string to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::NumericFailure;
  double objective_value = 0.0;
  std::vector<double> assignment;
  int iterations = 0;
  double kkt_residual = 0.0;
  bool heuristic = false;             // set by the signomial path
  std::vector<int> numerically_zero;  // variables at/below the zero threshold
  std::string message;
};

struct SolverSettings {
  double kkt_tol = 1e-8;
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  double sp_tol = 1e-7;          // signomial outer-loop objective tolerance
  int sp_max_outer = 50;
  double unbounded_floor = -1e30;
  double var_floor = 1e-150;     // positive variables are floored here
  double var_ceil = 1e150;
  double zero_threshold = 1e-30;
  double t0 = 1.0;
  double mu_stage_factor = 0.2;  // barrier parameter multiplier per centering stage
  int max_stages = 90;
  int max_newton_per_stage = 80;
};

double eval_posynomial(const Posynomial& p, const std::vector<double>& z);
double eval_monomial(const PosyMonomial& m, const std::vector<double>& z);

template <typename Program>
bool check_feasible(const Program& prog, const std::vector<double>& assignment, double tol);

nlohmann::json gp_debug_dump(const GeometricProgram& gp);

}  // namespace sonc
