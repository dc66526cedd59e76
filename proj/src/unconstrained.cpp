#include "sonc/unconstrained.hpp"

#include "sonc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace sonc {

SolverSettings default_sonc_settings() {
  SolverSettings s;
  s.gap_tol = 1e-10;
  return s;
}

namespace {

// Vertex relabeling (target first) plus the variable layout shared by the
// builder and the certificate extractor.
struct SoncGpLayout {
  std::vector<int> vertex_order;              // position -> original vertex index
  std::vector<int> position_of;               // original vertex index -> position
  std::vector<const STForm::Tail*> gp_tails;  // Delta(f) in graded-lex order
  std::map<std::pair<int, int>, int> var_of;  // (tail index, vertex position>=1) -> variable
  int num_vars = 0;
};

SoncGpLayout make_layout(const STForm& st, int target_index) {
  if (target_index < 0 || target_index > st.r())
    throw TargetNotVertex("target index " + std::to_string(target_index) +
                          " is not a simplex vertex");
  SoncGpLayout lay;
  lay.vertex_order.push_back(target_index);
  for (int j = 0; j <= st.r(); ++j)
    if (j != target_index) lay.vertex_order.push_back(j);
  lay.position_of.assign(st.r() + 1, -1);
  for (std::size_t p = 0; p < lay.vertex_order.size(); ++p)
    lay.position_of[lay.vertex_order[p]] = static_cast<int>(p);
  lay.gp_tails = st.delta_f_tails();
  for (std::size_t ti = 0; ti < lay.gp_tails.size(); ++ti) {
    const auto& tail = *lay.gp_tails[ti];
    for (int j : tail.nz) {
      int pos = lay.position_of[j];
      if (pos == 0) continue;
      lay.var_of[{static_cast<int>(ti), pos}] = lay.num_vars++;
    }
  }
  return lay;
}

std::string var_name(const STForm& st, const SoncGpLayout& lay, int tail_idx, int pos) {
  return "a[" + exponent_to_string(lay.gp_tails[tail_idx]->beta) + "][" +
         exponent_to_string(st.simplex_vertices[lay.vertex_order[pos]]) + "]";
}

double tail_lambda(const STForm::Tail& tail, const SoncGpLayout& lay, int pos) {
  return to_double(tail.lambda[lay.vertex_order[pos]]);
}

}  // namespace

GeometricProgram build_sonc_gp(const STForm& st, int target_index) {
  SoncGpLayout lay = make_layout(st, target_index);
  GeometricProgram gp;
  gp.num_vars = lay.num_vars;
  gp.var_names.resize(lay.num_vars);
  for (const auto& [key, v] : lay.var_of) gp.var_names[v] = var_name(st, lay, key.first, key.second);

  int r = st.r();
  for (std::size_t ti = 0; ti < lay.gp_tails.size(); ++ti) {
    const auto& tail = *lay.gp_tails[ti];
    double lam0 = to_double(tail.lambda[target_index]);
    double abs_f = std::abs(to_double(tail.coeff));
    if (lam0 != 0.0) {
      // lambda0 * |f_beta|^(1/lambda0) * prod_j (lambda_j / a_j)^(lambda_j/lambda0)
      PosyMonomial mono;
      mono.exponents.assign(lay.num_vars, Rational(0));
      double logc = std::log(lam0) + std::log(abs_f) / lam0;
      for (int j : tail.nz) {
        int pos = lay.position_of[j];
        if (pos == 0) continue;
        double lj = to_double(tail.lambda[j]);
        logc += (lj / lam0) * std::log(lj);
        Rational lam0_r = tail.lambda[target_index];
        mono.exponents[lay.var_of.at({static_cast<int>(ti), pos})] = -(tail.lambda[j] / lam0_r);
      }
      mono.coeff = std::exp(logc);
      gp.objective.push_back(std::move(mono));
    } else {
      // |f_beta| * prod_j (lambda_j / a_j)^lambda_j <= 1
      PosyMonomial mono;
      mono.exponents.assign(lay.num_vars, Rational(0));
      double logc = std::log(abs_f);
      for (int j : tail.nz) {
        int pos = lay.position_of[j];
        double lj = to_double(tail.lambda[j]);
        logc += lj * std::log(lj);
        mono.exponents[lay.var_of.at({static_cast<int>(ti), pos})] = -tail.lambda[j];
      }
      mono.coeff = std::exp(logc);
      gp.ineq_constraints.push_back({std::move(mono)});
    }
  }
  // sum_beta a_{beta,j} / f_{alpha(j)} <= 1 for every non-target vertex
  for (int pos = 1; pos <= r; ++pos) {
    Posynomial con;
    double fj = to_double(st.vertex_coeffs[lay.vertex_order[pos]]);
    for (std::size_t ti = 0; ti < lay.gp_tails.size(); ++ti) {
      auto it = lay.var_of.find({static_cast<int>(ti), pos});
      if (it == lay.var_of.end()) continue;
      PosyMonomial mono;
      mono.coeff = 1.0 / fj;
      mono.exponents.assign(lay.num_vars, Rational(0));
      mono.exponents[it->second] = 1;
      con.push_back(std::move(mono));
    }
    if (!con.empty()) gp.ineq_constraints.push_back(std::move(con));
  }
  return gp;
}

SoncCertificate extract_certificate(const STForm& st, int target_index, const SolveResult& solution,
                                    double recon_tol) {
  SoncGpLayout lay = make_layout(st, target_index);
  SoncCertificate cert;
  cert.n = st.n;
  cert.target = st.simplex_vertices[target_index];

  std::vector<double> vertex_load(st.r() + 1, 0.0);
  for (std::size_t ti = 0; ti < lay.gp_tails.size(); ++ti) {
    const auto& tail = *lay.gp_tails[ti];
    CertCircuit circ;
    circ.has_tail = true;
    circ.tail_exponent = tail.beta;
    circ.tail_coeff = to_double(tail.coeff);
    double lam0 = to_double(tail.lambda[target_index]);
    double abs_f = std::abs(circ.tail_coeff);
    for (int j : tail.nz) {
      int pos = lay.position_of[j];
      if (pos == 0) continue;
      double a = solution.assignment[lay.var_of.at({static_cast<int>(ti), pos})];
      circ.square_terms.emplace_back(st.simplex_vertices[j], a);
      vertex_load[j] += a;
    }
    if (lam0 != 0.0) {
      // This tail's objective summand becomes its target-vertex weight.
      double log_a0 = std::log(lam0) + std::log(abs_f) / lam0;
      for (int j : tail.nz) {
        int pos = lay.position_of[j];
        if (pos == 0) continue;
        double lj = tail_lambda(tail, lay, pos);
        double a = solution.assignment[lay.var_of.at({static_cast<int>(ti), pos})];
        log_a0 += (lj / lam0) * (std::log(lj) - std::log(a));
      }
      double a0 = std::exp(log_a0);
      circ.square_terms.emplace_back(cert.target, a0);
      vertex_load[target_index] += a0;
    }
    cert.circuits.push_back(std::move(circ));
  }
  // Leftover vertex mass and the tails the program ignores (monomial squares).
  for (int j = 0; j <= st.r(); ++j) {
    if (j == target_index) continue;
    double fj = to_double(st.vertex_coeffs[j]);
    double rj = fj - vertex_load[j];
    if (rj < -std::max(recon_tol, 1e-7 * std::max(1.0, fj)))
      throw ReconstructionFailure("vertex " + exponent_to_string(st.simplex_vertices[j]) +
                                  " oversubscribed by " + std::to_string(-rj));
    if (rj > 0.0) cert.residual_squares.emplace_back(st.simplex_vertices[j], rj);
  }
  for (const auto& tail : st.tails)
    if (tail.monomial_square)
      cert.residual_squares.emplace_back(tail.beta, to_double(tail.coeff));
  double f_target = to_double(st.vertex_coeffs[target_index]);
  cert.shift = f_target - solution.objective_value;
  double target_rest = f_target - cert.shift - vertex_load[target_index];
  if (target_rest < -std::max(recon_tol, 1e-7 * std::max(1.0, std::abs(f_target))))
    throw ReconstructionFailure("target vertex oversubscribed by " + std::to_string(-target_rest));
  if (target_rest > 0.0) cert.residual_squares.emplace_back(cert.target, target_rest);
  return cert;
}

SoncBound f_sonc(const Polynomial& f, std::optional<Exponent> target,
                 const SolverSettings& settings) {
  STForm st = st_form(f);
  int target_index = 0;  // graded-lex order puts the origin first when present
  if (target) {
    auto idx = st.vertex_index(*target);
    if (!idx)
      throw TargetNotVertex(exponent_to_string(*target) + " is not a vertex of the Newton polytope");
    target_index = *idx;
  }
  GeometricProgram gp = build_sonc_gp(st, target_index);
  SolveResult sol = solve_gp(gp, settings);
  if (sol.status != SolveStatus::Optimal)
    throw SolverFailure("SONC geometric program: " + to_string(sol.status) +
                        (sol.message.empty() ? "" : " (" + sol.message + ")"));
  SoncBound out;
  out.m_star = sol.objective_value;
  out.target = st.simplex_vertices[target_index];
  out.bound = to_double(st.vertex_coeffs[target_index]) - out.m_star;
  out.cert = extract_certificate(st, target_index, sol);
  out.solve = std::move(sol);
  return out;
}

bool verify_certificate(const Polynomial& f, const SoncCertificate& cert, double tol) {
  if (cert.n != f.n()) return false;
  std::map<Exponent, double, GradedLexLess> recon;
  auto add = [&](const Exponent& e, double c) { recon[e] += c; };
  for (const auto& circ : cert.circuits) {
    for (const auto& [e, c] : circ.square_terms) add(e, c);
    if (circ.has_tail) add(circ.tail_exponent, circ.tail_coeff);
  }
  for (const auto& [e, c] : cert.residual_squares) add(e, c);
  add(cert.target, cert.shift);

  for (const auto& [e, c] : f.terms()) {
    double want = to_double(c);
    auto it = recon.find(e);
    double got = it == recon.end() ? 0.0 : it->second;
    if (std::abs(got - want) > tol * std::max(1.0, std::abs(want))) return false;
  }
  for (const auto& [e, c] : recon) {
    if (f.terms().count(e)) continue;
    if (std::abs(c) > tol) return false;
  }

  for (const auto& [e, c] : cert.residual_squares)
    if (!all_even(e) || c < -tol) return false;

  for (const auto& circ : cert.circuits) {
    std::vector<Exponent> verts;
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : circ.square_terms) {
      if (!all_even(e) || c <= 0.0) return false;
      verts.push_back(e);
      coeffs.push_back(rational_from_double(c));
    }
    if (!circ.has_tail) continue;
    try {
      CircuitPolynomial c = CircuitPolynomial::make(cert.n, verts, coeffs, circ.tail_exponent,
                                                    rational_from_double(circ.tail_coeff));
      if (!is_nonnegative(c, std::max(tol, 1e-9))) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

nlohmann::json certificate_to_json(const SoncCertificate& cert) {
  nlohmann::json j;
  j["n"] = cert.n;
  j["target"] = cert.target;
  j["shift"] = cert.shift;
  auto terms_json = [](const std::vector<std::pair<Exponent, double>>& ts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : ts) arr.push_back({{"exp", e}, {"coeff", c}});
    return arr;
  };
  nlohmann::json circuits = nlohmann::json::array();
  for (const auto& circ : cert.circuits) {
    nlohmann::json cj;
    cj["squares"] = terms_json(circ.square_terms);
    if (circ.has_tail) cj["tail"] = {{"exp", circ.tail_exponent}, {"coeff", circ.tail_coeff}};
    circuits.push_back(cj);
  }
  j["circuits"] = circuits;
  j["residual_squares"] = terms_json(cert.residual_squares);
  return j;
}

SoncCertificate certificate_from_json(const nlohmann::json& j) {
  SoncCertificate cert;
  cert.n = j.at("n").get<int>();
  cert.target = j.at("target").get<Exponent>();
  cert.shift = j.at("shift").get<double>();
  auto terms_from = [](const nlohmann::json& arr) {
    std::vector<std::pair<Exponent, double>> out;
    for (const auto& t : arr) out.emplace_back(t.at("exp").get<Exponent>(), t.at("coeff").get<double>());
    return out;
  };
  for (const auto& cj : j.at("circuits")) {
    CertCircuit circ;
    circ.square_terms = terms_from(cj.at("squares"));
    if (cj.contains("tail")) {
      circ.has_tail = true;
      circ.tail_exponent = cj["tail"].at("exp").get<Exponent>();
      circ.tail_coeff = cj["tail"].at("coeff").get<double>();
    }
    cert.circuits.push_back(std::move(circ));
  }
  cert.residual_squares = terms_from(j.at("residual_squares"));
  return cert;
}

}  // namespace sonc
