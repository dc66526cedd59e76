#include "sonc/gp.hpp"

#include "sonc/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace sonc {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::NumericFailure: return "NumericFailure";
  }
  return "?";
}

double eval_monomial(const PosyMonomial& m, const std::vector<double>& z) {
  double v = m.coeff;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    double e = to_double(m.exponents[i]);
    if (e != 0.0) v *= std::pow(z[i], e);
  }
  return v;
}

double eval_posynomial(const Posynomial& p, const std::vector<double>& z) {
  double s = 0.0;
  for (const auto& m : p) s += eval_monomial(m, z);
  return s;
}

template <typename Program>
bool check_feasible(const Program& prog, const std::vector<double>& assignment, double tol) {
  if (static_cast<int>(assignment.size()) != prog.num_vars)
    throw DimensionMismatch("assignment length does not match variable count");
  for (const auto& c : prog.ineq_constraints)
    if (eval_posynomial(c, assignment) > 1.0 + tol) return false;
  for (const auto& q : prog.eq_constraints)
    if (std::abs(eval_monomial(q, assignment) - 1.0) > tol) return false;
  return true;
}

template bool check_feasible<GeometricProgram>(const GeometricProgram&, const std::vector<double>&, double);
template bool check_feasible<SignomialProgram>(const SignomialProgram&, const std::vector<double>&, double);

nlohmann::json gp_debug_dump(const GeometricProgram& gp) {
  nlohmann::json j;
  j["variables"] = gp.var_names;
  auto posy_json = [](const Posynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : p) {
      nlohmann::json row;
      row["log_coeff"] = std::log(m.coeff);
      nlohmann::json exps = nlohmann::json::array();
      for (const auto& e : m.exponents) exps.push_back(format_rational(e));
      row["exponents"] = exps;
      arr.push_back(row);
    }
    return arr;
  };
  j["objective"] = posy_json(gp.objective);
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : gp.ineq_constraints) cons.push_back(posy_json(c));
  j["constraints"] = cons;
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& q : gp.eq_constraints) eqs.push_back(posy_json(Posynomial{q}));
  j["equalities"] = eqs;
  return j;
}

}  // namespace sonc
