#pragma once

#include "sonc/gp.hpp"

#include <optional>

namespace sonc {

/// Log-domain barrier interior-point method: z = exp(y) turns every
/// posynomial constraint into a log-sum-exp inequality; damped Newton
/// centering, barrier parameter scaled by settings.mu_stage_factor per stage.
SolveResult solve_gp(const GeometricProgram& gp, const SolverSettings& settings = {});

/// Sequential condensation heuristic: negative parts in denominator position
/// are replaced by their AM-GM monomial at the current iterate and the
/// resulting GP is re-solved until the objective settles. Local bound only;
/// results carry heuristic = true unless the input is already a GP.
SolveResult solve_signomial(const SignomialProgram& sp, const SolverSettings& settings = {},
                            const std::optional<std::vector<double>>& start = std::nullopt);

/// Hessian of log p(exp(y)) — exposed so tests can check convexity directly.
std::vector<std::vector<double>> log_domain_hessian(const Posynomial& p,
                                                    const std::vector<double>& y);

}  // namespace sonc
