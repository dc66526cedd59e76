#include "sonc/constrained.hpp"

#include "sonc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sonc {

double LinearForm::value(const std::vector<double>& mu) const {
  double v = to_double(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) v += mu[i - 1] * to_double(c[i]);
  return v;
}

std::vector<int> LinearForm::plus() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> LinearForm::minus() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 0) out.push_back(static_cast<int>(i));
  return out;
}

bool LinearForm::is_zero() const {
  for (const auto& v : c)
    if (v != 0) return false;
  return true;
}

GStructure build_g_structure(const ConstrainedProblem& p) {
  const int s = p.s();
  for (const auto& g : p.constraints)
    if (g.n() != p.n()) throw DimensionMismatch("constraint variable count differs from f");
  GStructure gs;
  gs.n = p.n();
  gs.s = s;

  // c[i] = -g_{i,beta}; g_0 = -f makes c[0] the coefficient of f itself.
  std::map<Exponent, LinearForm, GradedLexLess> forms;
  auto form_at = [&](const Exponent& e) -> LinearForm& {
    auto it = forms.find(e);
    if (it == forms.end()) {
      LinearForm lf;
      lf.c.assign(s + 1, Rational(0));
      it = forms.emplace(e, std::move(lf)).first;
    }
    return it->second;
  };
  for (const auto& [e, c] : p.f.terms()) form_at(e).c[0] = c;
  for (int i = 0; i < s; ++i)
    for (const auto& [e, c] : p.constraints[i].terms()) form_at(e).c[i + 1] = -c;

  for (const auto& [e, lf] : forms) gs.union_support.push_back(e);
  gs.vertices = hull_vertices(gs.union_support);

  for (const auto& v : gs.vertices) {
    if (!all_even(v))
      throw ClubsuitViolated("union-support vertex " + exponent_to_string(v) + " is odd");
    if (forms.at(v).plus().empty())
      throw ClubsuitViolated("coefficient of vertex " + exponent_to_string(v) +
                             " is nonpositive for every mu >= 0");
    gs.vertex_forms.push_back(forms.at(v));
  }
  {
    RatMat diffs;
    for (std::size_t i = 1; i < gs.vertices.size(); ++i) {
      RatVec row;
      for (int j = 0; j < gs.n; ++j) row.emplace_back(gs.vertices[i][j] - gs.vertices[0][j]);
      diffs.push_back(std::move(row));
    }
    if (!diffs.empty() && rat_rank(diffs) != static_cast<int>(gs.vertices.size()) - 1)
      throw NotSimplex("V(A) of the union support is not a simplex (" +
                       std::to_string(gs.vertices.size()) + " vertices)");
    if (static_cast<int>(gs.vertices.size()) > gs.n + 1)
      throw NotSimplex("V(A) of the union support is not a simplex (" +
                       std::to_string(gs.vertices.size()) + " vertices in " +
                       std::to_string(gs.n) + " variables)");
  }

  std::map<Exponent, bool, GradedLexLess> is_vertex;
  for (const auto& v : gs.vertices) is_vertex[v] = true;
  for (auto& [e, lf] : forms) {
    if (is_vertex.count(e)) continue;
    // A positive even contribution is a monomial square of some -g_i in the
    // interior; dropping it can only shrink K's relaxation, never unsoundly.
    if (all_even(e)) {
      for (auto& ci : lf.c)
        if (ci > 0) ci = 0;
    }
    if (lf.is_zero()) {
      gs.pruned.push_back(e);
      continue;
    }
    gs.delta_g.push_back(e);
    gs.tail_forms.push_back(lf);
    auto lam = barycentric(e, gs.vertices);
    std::vector<int> nz;
    for (std::size_t j = 0; j < lam.size(); ++j)
      if (lam[j] != 0) nz.push_back(static_cast<int>(j));
    gs.tail_lambda.push_back(std::move(lam));
    gs.tail_nz.push_back(std::move(nz));
  }
  return gs;
}

namespace {

// Variable layout for programs built from a GStructure:
//   [a_{beta,j} : beta in delta_g, j = 1..r] [b_beta : beta in delta_g] [mu_1..mu_s]
struct ConstrainedLayout {
  int r = 0;
  int s = 0;
  int num_tails = 0;
  std::vector<int> vertex_order;  // position -> vertex index; position 0 = target

  int num_vars() const { return num_tails * r + num_tails + s; }
  int a_var(int tail, int pos) const { return tail * r + (pos - 1); }
  int b_var(int tail) const { return num_tails * r + tail; }
  int mu_var(int i) const { return num_tails * r + num_tails + (i - 1); }  // i in 1..s
};

ConstrainedLayout make_layout(const GStructure& gs, int target_index) {
  if (target_index < 0 || target_index >= static_cast<int>(gs.vertices.size()))
    throw TargetNotVertex("target index out of range");
  ConstrainedLayout lay;
  lay.r = static_cast<int>(gs.vertices.size()) - 1;
  lay.s = gs.s;
  lay.num_tails = static_cast<int>(gs.delta_g.size());
  lay.vertex_order.push_back(target_index);
  for (int j = 0; j <= lay.r; ++j)
    if (j != target_index) lay.vertex_order.push_back(j);
  return lay;
}

std::vector<std::string> layout_names(const GStructure& gs, const ConstrainedLayout& lay,
                                      const char* b_symbol) {
  std::vector<std::string> names(lay.num_vars());
  for (int ti = 0; ti < lay.num_tails; ++ti) {
    for (int pos = 1; pos <= lay.r; ++pos)
      names[lay.a_var(ti, pos)] = "a[" + exponent_to_string(gs.delta_g[ti]) + "][" +
                                  exponent_to_string(gs.vertices[lay.vertex_order[pos]]) + "]";
    names[lay.b_var(ti)] = std::string(b_symbol) + "[" + exponent_to_string(gs.delta_g[ti]) + "]";
  }
  for (int i = 1; i <= lay.s; ++i) names[lay.mu_var(i)] = "mu" + std::to_string(i);
  return names;
}

PosyMonomial unit_mono(int nvars, double coeff) {
  PosyMonomial m;
  m.coeff = coeff;
  m.exponents.assign(nvars, Rational(0));
  return m;
}

// Objective tail summand: lambda0 * b^(1/lambda0) * prod_j (lambda_j/a_j)^(lambda_j/lambda0)
PosyMonomial tail_objective_monomial(const GStructure& gs, const ConstrainedLayout& lay, int ti,
                                     int target_index) {
  const auto& lam = gs.tail_lambda[ti];
  Rational lam0 = lam[target_index];
  double lam0_d = to_double(lam0);
  PosyMonomial mono = unit_mono(lay.num_vars(), 0.0);
  double logc = std::log(lam0_d);
  mono.exponents[lay.b_var(ti)] = Rational(1) / lam0;
  for (int j : gs.tail_nz[ti]) {
    if (j == target_index) continue;
    int pos = -1;
    for (int p = 1; p <= lay.r; ++p)
      if (lay.vertex_order[p] == j) pos = p;
    double lj = to_double(lam[j]);
    logc += (lj / lam0_d) * std::log(lj);
    mono.exponents[lay.a_var(ti, pos)] = -(lam[j] / lam0);
  }
  mono.coeff = std::exp(logc);
  return mono;
}

// Constraint (2) monomial: b * prod_j (lambda_j/a_j)^(lambda_j) <= 1
PosyMonomial lambda0_zero_monomial(const GStructure& gs, const ConstrainedLayout& lay, int ti) {
  const auto& lam = gs.tail_lambda[ti];
  PosyMonomial mono = unit_mono(lay.num_vars(), 0.0);
  double logc = 0.0;
  mono.exponents[lay.b_var(ti)] = 1;
  for (int j : gs.tail_nz[ti]) {
    int pos = -1;
    for (int p = 1; p <= lay.r; ++p)
      if (lay.vertex_order[p] == j) pos = p;
    double lj = to_double(lam[j]);
    logc += lj * std::log(lj);
    mono.exponents[lay.a_var(ti, pos)] = -lam[j];
  }
  mono.coeff = std::exp(logc);
  return mono;
}

STForm st_form_from_structure(const GStructure& gs) {
  STForm st;
  st.n = gs.n;
  st.simplex_vertices = gs.vertices;
  for (const auto& lf : gs.vertex_forms) st.vertex_coeffs.push_back(lf.c[0]);
  for (std::size_t ti = 0; ti < gs.delta_g.size(); ++ti) {
    STForm::Tail t;
    t.beta = gs.delta_g[ti];
    t.coeff = gs.tail_forms[ti].c[0];
    t.lambda = gs.tail_lambda[ti];
    t.nz = gs.tail_nz[ti];
    t.monomial_square = false;  // squares were pruned while building the structure
    st.tails.push_back(std::move(t));
  }
  return st;
}

}  // namespace

GeometricProgram build_constrained_gp(const GStructure& gs, int target_index) {
  if (gs.s == 0) return build_sonc_gp(st_form_from_structure(gs), target_index);
  ConstrainedLayout lay = make_layout(gs, target_index);
  for (int pos = 1; pos <= lay.r; ++pos) {
    const auto& form = gs.vertex_forms[lay.vertex_order[pos]];
    if (form.plus().size() != 1)
      throw HypothesisViolated(
          "vertex " + exponent_to_string(gs.vertices[lay.vertex_order[pos]]) + " has " +
          std::to_string(form.plus().size()) +
          " strictly positive coefficient terms; the signomial program route applies");
  }
  GeometricProgram gp;
  gp.num_vars = lay.num_vars();
  gp.var_names = layout_names(gs, lay, "b");

  // p = sum_i mu_i * max(g_{i,alpha(0)}, 0) + tail summands
  const auto& target_form = gs.vertex_forms[target_index];
  for (int i = 1; i <= gs.s; ++i) {
    if (target_form.c[i] < 0) {  // g_{i,alpha(0)} = -c_i > 0
      PosyMonomial m = unit_mono(gp.num_vars, to_double(-target_form.c[i]));
      m.exponents[lay.mu_var(i)] = 1;
      gp.objective.push_back(std::move(m));
    }
  }
  for (int ti = 0; ti < lay.num_tails; ++ti)
    if (gs.tail_lambda[ti][target_index] != 0)
      gp.objective.push_back(tail_objective_monomial(gs, lay, ti, target_index));

  // (1) (sum_beta a_{beta,j} + G^-_{alpha(j)}) / G^+_{alpha(j)} <= 1
  for (int pos = 1; pos <= lay.r; ++pos) {
    const auto& form = gs.vertex_forms[lay.vertex_order[pos]];
    int ip = form.plus().front();
    double cp = to_double(form.c[ip]);
    Posynomial con;
    for (int ti = 0; ti < lay.num_tails; ++ti) {
      PosyMonomial m = unit_mono(gp.num_vars, 1.0 / cp);
      m.exponents[lay.a_var(ti, pos)] = 1;
      if (ip >= 1) m.exponents[lay.mu_var(ip)] = -1;
      con.push_back(std::move(m));
    }
    for (int i : form.minus()) {
      PosyMonomial m = unit_mono(gp.num_vars, to_double(-form.c[i]) / cp);
      if (i >= 1) m.exponents[lay.mu_var(i)] = 1;
      if (ip >= 1) m.exponents[lay.mu_var(ip)] -= 1;
      con.push_back(std::move(m));
    }
    if (!con.empty()) gp.ineq_constraints.push_back(std::move(con));
  }
  // (2) for lambda0 = 0 tails
  for (int ti = 0; ti < lay.num_tails; ++ti)
    if (gs.tail_lambda[ti][target_index] == 0)
      gp.ineq_constraints.push_back({lambda0_zero_monomial(gs, lay, ti)});
  // (3) G^+_beta <= b_beta and (4) G^-_beta <= b_beta
  for (int ti = 0; ti < lay.num_tails; ++ti) {
    const auto& form = gs.tail_forms[ti];
    for (const auto& side : {form.plus(), form.minus()}) {
      if (side.empty()) continue;
      Posynomial con;
      for (int i : side) {
        double mag = std::abs(to_double(form.c[i]));
        PosyMonomial m = unit_mono(gp.num_vars, mag);
        if (i >= 1) m.exponents[lay.mu_var(i)] = 1;
        m.exponents[lay.b_var(ti)] = -1;
        con.push_back(std::move(m));
      }
      gp.ineq_constraints.push_back(std::move(con));
    }
  }
  return gp;
}

SignomialProgram build_constrained_snp(const GStructure& gs, int target_index) {
  if (gs.s == 0) {
    GeometricProgram gp = build_sonc_gp(st_form_from_structure(gs), target_index);
    return SignomialProgram{gp.num_vars, gp.var_names, gp.objective, gp.ineq_constraints,
                            gp.eq_constraints};
  }
  ConstrainedLayout lay = make_layout(gs, target_index);
  SignomialProgram sp;
  sp.num_vars = lay.num_vars();
  sp.var_names = layout_names(gs, lay, "c");

  // q = sum_i mu_i g_{i,alpha(0)} (signed) + tail summands
  const auto& target_form = gs.vertex_forms[target_index];
  for (int i = 1; i <= gs.s; ++i) {
    if (target_form.c[i] != 0) {
      PosyMonomial m = unit_mono(sp.num_vars, to_double(-target_form.c[i]));
      m.exponents[lay.mu_var(i)] = 1;
      sp.objective.push_back(std::move(m));
    }
  }
  for (int ti = 0; ti < lay.num_tails; ++ti)
    if (gs.tail_lambda[ti][target_index] != 0)
      sp.objective.push_back(tail_objective_monomial(gs, lay, ti, target_index));

  // (1) as the signomial 1 + sum a + G^- - G^+ <= 1
  for (int pos = 1; pos <= lay.r; ++pos) {
    const auto& form = gs.vertex_forms[lay.vertex_order[pos]];
    Posynomial con;
    con.push_back(unit_mono(sp.num_vars, 1.0));
    for (int ti = 0; ti < lay.num_tails; ++ti) {
      PosyMonomial m = unit_mono(sp.num_vars, 1.0);
      m.exponents[lay.a_var(ti, pos)] = 1;
      con.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < form.c.size(); ++i) {
      if (form.c[i] == 0) continue;
      PosyMonomial m = unit_mono(sp.num_vars, -to_double(form.c[i]));
      if (i >= 1) m.exponents[lay.mu_var(static_cast<int>(i))] = 1;
      con.push_back(std::move(m));
    }
    sp.ineq_constraints.push_back(std::move(con));
  }
  for (int ti = 0; ti < lay.num_tails; ++ti)
    if (gs.tail_lambda[ti][target_index] == 0)
      sp.ineq_constraints.push_back({lambda0_zero_monomial(gs, lay, ti)});
  // (3) (G^+ - G^-) / c_beta <= 1 and (4) the mirror image
  for (int ti = 0; ti < lay.num_tails; ++ti) {
    const auto& form = gs.tail_forms[ti];
    for (int sign_flip : {+1, -1}) {
      Posynomial con;
      for (std::size_t i = 0; i < form.c.size(); ++i) {
        if (form.c[i] == 0) continue;
        double coeff = sign_flip * to_double(form.c[i]);  // +: G^+ terms positive
        PosyMonomial m = unit_mono(sp.num_vars, coeff);
        if (i >= 1) m.exponents[lay.mu_var(static_cast<int>(i))] = 1;
        m.exponents[lay.b_var(ti)] = -1;
        con.push_back(std::move(m));
      }
      if (!con.empty()) sp.ineq_constraints.push_back(std::move(con));
    }
  }
  return sp;
}

Polynomial assemble_g(const ConstrainedProblem& p, const std::vector<double>& mu) {
  if (static_cast<int>(mu.size()) != p.s())
    throw DimensionMismatch("mu length does not match constraint count");
  Polynomial g = p.f;
  for (int i = 0; i < p.s(); ++i) {
    if (mu[i] < 0) throw InvalidInput("mu must be nonnegative");
    if (mu[i] != 0) g = g + p.constraints[i] * (-rational_from_double(mu[i]));
  }
  return g;
}

std::optional<SoncBound> fixed_mu_eval(const ConstrainedProblem& p, const std::vector<double>& mu,
                                       const SolverSettings& settings) {
  Polynomial g = assemble_g(p, mu);
  if (g.is_zero()) {
    SoncBound out;
    out.bound = 0.0;
    out.m_star = 0.0;
    out.target.assign(p.n(), 0);
    out.cert.n = p.n();
    out.cert.target = out.target;
    out.cert.shift = 0.0;
    out.solve.status = SolveStatus::Optimal;
    return out;
  }
  try {
    return f_sonc(g, std::nullopt, settings);
  } catch (const NotSTForm&) {
    return std::nullopt;
  } catch (const SolverFailure&) {
    return std::nullopt;
  }
}

double fixed_mu_bound(const ConstrainedProblem& p, const std::vector<double>& mu,
                      const SolverSettings& settings) {
  auto r = fixed_mu_eval(p, mu, settings);
  return r ? r->bound : -std::numeric_limits<double>::infinity();
}

ConstrainedBound lower_bound(const ConstrainedProblem& p, ConstrainedStrategy strategy,
                             const SolverSettings& settings) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  ConstrainedBound out;
  out.bound = neg_inf;
  out.gamma = std::numeric_limits<double>::quiet_NaN();
  out.mu.assign(p.s(), 0.0);
  out.program_kind = "mu0-probe";

  // The mu = 0 boundary is probed unconditionally; paper optima sit there.
  std::vector<double> mu0(p.s(), 0.0);
  std::optional<SoncBound> probe = fixed_mu_eval(p, mu0, settings);
  if (probe) {
    out.bound = probe->bound;
    out.certificate_run = probe;
  }

  GStructure gs;
  try {
    gs = build_g_structure(p);
  } catch (const ClubsuitViolated&) {
    return out;  // no mu > 0 admits an ST structure; the probe is the answer
  }
  int target_index = 0;  // graded-lex first vertex; the origin when present

  std::optional<SolveResult> gp_solution;
  bool used_snp = false;
  std::string kind;
  if (strategy != ConstrainedStrategy::Snp) {
    try {
      GeometricProgram gp = build_constrained_gp(gs, target_index);
      SolveResult r = solve_gp(gp, settings);
      if (r.status == SolveStatus::Optimal) {
        gp_solution = std::move(r);
        kind = "constrained-gp";
      } else if (strategy == ConstrainedStrategy::Gp) {
        out.program_solve = std::move(r);
        return out;  // infeasible program: the probe (possibly -inf) stands
      }
    } catch (const HypothesisViolated&) {
      if (strategy == ConstrainedStrategy::Gp) throw;
    }
  }
  if (!gp_solution.has_value() || strategy == ConstrainedStrategy::Snp) {
    SignomialProgram sp = build_constrained_snp(gs, target_index);
    std::optional<std::vector<double>> seed;
    if (gp_solution) seed = gp_solution->assignment;
    SolveResult r = solve_signomial(sp, settings, seed);
    if (r.status == SolveStatus::Optimal || r.status == SolveStatus::IterationLimit) {
      used_snp = true;
      gp_solution = std::move(r);
      kind = "constrained-snp";
    } else if (!gp_solution) {
      out.program_solve = std::move(r);
      return out;
    }
  }

  const SolveResult& sol = *gp_solution;
  out.gamma = sol.objective_value;
  out.heuristic = used_snp;
  out.program_kind = kind;
  int offset = static_cast<int>(sol.assignment.size()) - p.s();
  std::vector<double> mu_star(p.s(), 0.0);
  for (int i = 0; i < p.s(); ++i) {
    double v = sol.assignment[offset + i];
    mu_star[i] = v <= settings.zero_threshold ? 0.0 : v;
  }
  double f_target = to_double(p.f.coeff(gs.vertices[target_index]));
  double gamma_bound = f_target - sol.objective_value;
  // Re-solve the concrete G(mu*): at least as good, and it carries a
  // verifiable certificate.
  std::optional<SoncBound> rerun = fixed_mu_eval(p, mu_star, settings);
  out.bound = std::max({out.bound, gamma_bound, rerun ? rerun->bound : neg_inf});
  double cert_slack = 1e-6 * std::max(1.0, std::abs(out.bound));
  if (rerun && rerun->bound >= out.bound - cert_slack) {
    out.mu = mu_star;
    out.certificate_run = rerun;
  } else if (probe && probe->bound >= out.bound - cert_slack) {
    out.mu.assign(p.s(), 0.0);
    out.certificate_run = probe;
  } else {
    out.mu = mu_star;
    out.certificate_run.reset();
  }
  out.program_solve = sol;
  return out;
}

}  // namespace sonc
