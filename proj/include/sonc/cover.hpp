#pragma once

#include "sonc/constrained.hpp"
#include "sonc/unconstrained.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sonc {

/// f written as a sum of ST-pieces along a triangulation of its
/// monomial-square exponents; weights are exact so the sum is f exactly.
struct CoverDecomposition {
  Triangulation tri;
  std::vector<Polynomial> pieces;
  struct SplitEntry {
    Exponent exp;
    std::vector<int> piece_indices;
    std::vector<Rational> weights;  // same signs as f's coefficient; sum equals it
  };
  std::vector<SplitEntry> splits;  // one entry per support exponent of f
};

using WeightOverrides = std::map<Exponent, std::map<int, Rational>, GradedLexLess>;

CoverDecomposition decompose(const Polynomial& f,
                             const std::optional<Triangulation>& tri = std::nullopt,
                             const WeightOverrides& overrides = {});

struct CoverBound {
  std::optional<double> lower_bound;  // present when an origin-targeted aggregate is valid
  std::map<Exponent, double, GradedLexLess> coefficient_requirements;
  std::vector<double> piece_m;
  std::vector<Exponent> piece_targets;
  std::vector<SoncCertificate> certificates;
  bool feasible = true;
  std::string message;
};

CoverBound bound_via_cover(const Polynomial& f, const CoverDecomposition& dec,
                           const std::optional<std::vector<Exponent>>& targets = std::nullopt,
                           const SolverSettings& settings = default_sonc_settings());

/// Projected coordinate descent over the shared-exponent splits; never worse
/// than the input, deterministic, at most `budget` piece GP solves.
CoverDecomposition improve_weights(const Polynomial& f, const CoverDecomposition& dec,
                                   const std::optional<std::vector<Exponent>>& targets,
                                   int budget,
                                   const SolverSettings& settings = default_sonc_settings());

struct ConstrainedCoverBound {
  double bound = 0.0;
  double gamma = 0.0;
  std::vector<double> mu;
  std::vector<double> piece_m;
  SolveResult solve;
  std::string program_kind;
  // Certificates for the concrete G(mu*): either one ST certificate or a
  // per-piece list from re-decomposing G(mu*). Pieces are kept alongside so
  // the certificates can be verified against what they certify.
  std::optional<SoncCertificate> certificate;
  std::vector<Polynomial> cert_pieces;
  std::vector<SoncCertificate> piece_certificates;
};

/// G(mu) split into ST-pieces sharing the mu variables, one joint program.
/// Every simplex must contain the target vertex (the origin).
ConstrainedCoverBound constrained_cover_bound(
    const ConstrainedProblem& p, const std::optional<Triangulation>& tri = std::nullopt,
    const SolverSettings& settings = default_sonc_settings());

nlohmann::json triangulation_to_json(const Triangulation& tri);
Triangulation triangulation_from_json(const nlohmann::json& j);

}  // namespace sonc
