#pragma once

#include "sonc/circuit.hpp"
#include "sonc/gp.hpp"
#include "sonc/gp_solver.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>

namespace sonc {

/// One circuit of a SONC decomposition; coefficients come from the solver.
struct CertCircuit {
  std::vector<std::pair<Exponent, double>> square_terms;
  bool has_tail = false;
  Exponent tail_exponent;
  double tail_coeff = 0.0;
};

/// Witness that f - shift * x^target is a sum of nonnegative circuit
/// polynomials plus monomial squares.
struct SoncCertificate {
  int n = 0;
  Exponent target;
  double shift = 0.0;
  std::vector<CertCircuit> circuits;
  std::vector<std::pair<Exponent, double>> residual_squares;
};

SolverSettings default_sonc_settings();

/// The program of Corollary-style SONC optimization: variables a_{beta,j} for
/// beta in Delta(f), j in nz(beta) with the target relabeled to index 0.
GeometricProgram build_sonc_gp(const STForm& st, int target_index);

struct SoncBound {
  double bound = 0.0;
  double m_star = 0.0;
  Exponent target;
  SoncCertificate cert;
  SolveResult solve;
};

/// target defaults to the origin when it is a hull vertex, otherwise the
/// graded-lex-smallest vertex.
SoncBound f_sonc(const Polynomial& f, std::optional<Exponent> target = std::nullopt,
                 const SolverSettings& settings = default_sonc_settings());

SoncCertificate extract_certificate(const STForm& st, int target_index, const SolveResult& solution,
                                    double recon_tol = 1e-7);

bool verify_certificate(const Polynomial& f, const SoncCertificate& cert, double tol = 1e-6);

nlohmann::json certificate_to_json(const SoncCertificate& cert);
SoncCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace sonc
