#include "sonc/gp_solver.hpp"

#include "sonc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sonc {

namespace {

struct LogBlock {
  Eigen::MatrixXd a;  // one row per monomial
  Eigen::VectorXd b;  // log coefficients
};

LogBlock to_log_block(const Posynomial& p, int m) {
  LogBlock blk;
  blk.a.resize(static_cast<int>(p.size()), m);
  blk.b.resize(static_cast<int>(p.size()));
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    if (p[k].coeff <= 0.0) throw InvalidInput("posynomial coefficient must be positive");
    blk.b(k) = std::log(p[k].coeff);
    for (int i = 0; i < m; ++i) blk.a(k, i) = to_double(p[k].exponents[i]);
  }
  return blk;
}

// Stable log-sum-exp with gradient and Hessian of y -> log sum exp(b + A y).
double lse(const LogBlock& blk, const Eigen::VectorXd& y, Eigen::VectorXd* grad,
           Eigen::MatrixXd* hess) {
  Eigen::VectorXd u = blk.b + blk.a * y;
  double umax = u.maxCoeff();
  Eigen::VectorXd w = (u.array() - umax).exp();
  double total = w.sum();
  double val = umax + std::log(total);
  if (grad || hess) {
    Eigen::VectorXd wn = w / total;
    if (grad) *grad = blk.a.transpose() * wn;
    if (hess) {
      Eigen::VectorXd g = blk.a.transpose() * wn;
      *hess = blk.a.transpose() * wn.asDiagonal() * blk.a - g * g.transpose();
    }
  }
  return val;
}

struct Transformed {
  int m = 0;
  bool has_objective = false;
  LogBlock obj;
  std::vector<LogBlock> cons;
  bool has_eq = false;
  Eigen::MatrixXd eq_c;
  Eigen::VectorXd eq_d;
  double ylo = 0.0, yhi = 0.0;
};

Transformed transform(const GeometricProgram& gp, const SolverSettings& s) {
  Transformed t;
  t.m = gp.num_vars;
  t.ylo = std::log(s.var_floor);
  t.yhi = std::log(s.var_ceil);
  if (!gp.objective.empty()) {
    t.has_objective = true;
    t.obj = to_log_block(gp.objective, t.m);
  }
  for (const auto& c : gp.ineq_constraints)
    if (!c.empty()) t.cons.push_back(to_log_block(c, t.m));
  if (!gp.eq_constraints.empty()) {
    t.has_eq = true;
    t.eq_c.resize(static_cast<int>(gp.eq_constraints.size()), t.m);
    t.eq_d.resize(static_cast<int>(gp.eq_constraints.size()));
    for (int j = 0; j < static_cast<int>(gp.eq_constraints.size()); ++j) {
      const auto& q = gp.eq_constraints[j];
      if (q.coeff <= 0.0) throw InvalidInput("equality monomial coefficient must be positive");
      for (int i = 0; i < t.m; ++i) t.eq_c(j, i) = to_double(q.exponents[i]);
      t.eq_d(j) = -std::log(q.coeff);
    }
  }
  return t;
}

struct CenterOutcome {
  bool ok = true;
  int newton_steps = 0;
  double grad_norm = 0.0;
};

// phi(y) = t_barrier * F0(y) - sum log(-Fi(y)) - sum log(y-lo) - sum log(hi-y)
class Phase2 {
 public:
  Phase2(const Transformed& t, const SolverSettings& s) : t_(t), s_(s) {}

  bool strictly_feasible(const Eigen::VectorXd& y) const {
    for (int i = 0; i < t_.m; ++i)
      if (!(y(i) > t_.ylo && y(i) < t_.yhi)) return false;
    for (const auto& c : t_.cons)
      if (!(lse(c, y, nullptr, nullptr) < 0.0)) return false;
    return true;
  }

  double phi(const Eigen::VectorXd& y, double tb) const {
    double v = 0.0;
    if (t_.has_objective) v += tb * lse(t_.obj, y, nullptr, nullptr);
    for (const auto& c : t_.cons) v -= std::log(-lse(c, y, nullptr, nullptr));
    for (int i = 0; i < t_.m; ++i) v -= std::log(y(i) - t_.ylo) + std::log(t_.yhi - y(i));
    return v;
  }

  void derivatives(const Eigen::VectorXd& y, double tb, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    grad = Eigen::VectorXd::Zero(t_.m);
    hess = Eigen::MatrixXd::Zero(t_.m, t_.m);
    Eigen::VectorXd g;
    Eigen::MatrixXd h;
    if (t_.has_objective) {
      lse(t_.obj, y, &g, &h);
      grad += tb * g;
      hess += tb * h;
    }
    for (const auto& c : t_.cons) {
      double f = lse(c, y, &g, &h);
      grad += g / (-f);
      hess += h / (-f) + (g * g.transpose()) / (f * f);
    }
    for (int i = 0; i < t_.m; ++i) {
      double a = y(i) - t_.ylo, b = t_.yhi - y(i);
      grad(i) += -1.0 / a + 1.0 / b;
      hess(i, i) += 1.0 / (a * a) + 1.0 / (b * b);
    }
  }

  CenterOutcome center(Eigen::VectorXd& y, double tb) const {
    CenterOutcome out;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    int neq = t_.has_eq ? static_cast<int>(t_.eq_c.rows()) : 0;
    for (int it = 0; it < s_.max_newton_per_stage; ++it) {
      derivatives(y, tb, grad, hess);
      out.grad_norm = grad.lpNorm<Eigen::Infinity>();
      Eigen::VectorXd dy;
      if (neq > 0) {
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(t_.m + neq, t_.m + neq);
        kkt.topLeftCorner(t_.m, t_.m) = hess;
        kkt.topRightCorner(t_.m, neq) = t_.eq_c.transpose();
        kkt.bottomLeftCorner(neq, t_.m) = t_.eq_c;
        Eigen::VectorXd rhs(t_.m + neq);
        rhs.head(t_.m) = -grad;
        rhs.tail(neq) = t_.eq_d - t_.eq_c * y;
        Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
        dy = sol.head(t_.m);
      } else {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        double reg = 0.0;
        while (ldlt.info() != Eigen::Success || !(ldlt.solve(-grad).allFinite())) {
          reg = reg == 0.0 ? 1e-10 : reg * 100.0;
          if (reg > 1e6) {
            out.ok = false;
            return out;
          }
          ldlt.compute(hess + reg * Eigen::MatrixXd::Identity(t_.m, t_.m));
        }
        dy = ldlt.solve(-grad);
      }
      if (!dy.allFinite()) {
        out.ok = false;
        return out;
      }
      double decrement2 = -grad.dot(dy);
      if (decrement2 < 0) decrement2 = dy.dot(hess * dy);
      if (decrement2 * 0.5 <= 1e-13 && (neq == 0 || (t_.eq_c * y - t_.eq_d).norm() <= 1e-12))
        return out;
      double phi0 = phi(y, tb);
      double alpha = 1.0;
      bool stepped = false;
      for (int ls = 0; ls < 60; ++ls) {
        Eigen::VectorXd cand = y + alpha * dy;
        if (strictly_feasible(cand) && phi(cand, tb) <= phi0 + 0.1 * alpha * grad.dot(dy)) {
          y = cand;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      ++out.newton_steps;
      if (!stepped) return out;  // stalled; centering as good as it gets
    }
    return out;
  }

 private:
  const Transformed& t_;
  const SolverSettings& s_;
};

// Phase 1 over (y, s): minimize s subject to Fi(y) <= s, box on y.
struct Phase1Result {
  bool feasible = false;
  Eigen::VectorXd y;
  double violation = 0.0;  // final s when infeasible
  int newton_steps = 0;
  bool numeric_failure = false;
};

Phase1Result phase1(const Transformed& t, const SolverSettings& set) {
  Phase1Result out;
  int m = t.m;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  if (t.has_eq) {
    // Start on the equality manifold (minimum-norm solution).
    y = t.eq_c.fullPivLu().solve(t.eq_d);
    y = y.cwiseMax(t.ylo + 1.0).cwiseMin(t.yhi - 1.0);
  }
  auto max_violation = [&](const Eigen::VectorXd& yy) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& c : t.cons) worst = std::max(worst, lse(c, yy, nullptr, nullptr));
    return worst;
  };
  double s = max_violation(y);
  if (s < -1e-7) {
    out.feasible = true;
    out.y = y;
    return out;
  }
  s += 1.0;

  int neq = t.has_eq ? static_cast<int>(t.eq_c.rows()) : 0;
  double tb = 1.0;
  int nbarrier = static_cast<int>(t.cons.size()) + 2 * m;
  for (int stage = 0; stage < set.max_stages; ++stage) {
    for (int it = 0; it < set.max_newton_per_stage; ++it) {
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(m + 1);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m + 1);
      grad(m) = tb;
      Eigen::VectorXd g;
      Eigen::MatrixXd h;
      for (const auto& c : t.cons) {
        double f = lse(c, y, &g, &h);
        double u = s - f;  // > 0
        Eigen::VectorXd ext(m + 1);
        ext.head(m) = -g;
        ext(m) = 1.0;
        grad += -ext / u;
        hess += (ext * ext.transpose()) / (u * u);
        hess.topLeftCorner(m, m) += h / u;
      }
      for (int i = 0; i < m; ++i) {
        double a = y(i) - t.ylo, b = t.yhi - y(i);
        grad(i) += -1.0 / a + 1.0 / b;
        hess(i, i) += 1.0 / (a * a) + 1.0 / (b * b);
      }
      Eigen::VectorXd dz;
      if (neq > 0) {
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1 + neq, m + 1 + neq);
        kkt.topLeftCorner(m + 1, m + 1) = hess;
        for (int r = 0; r < neq; ++r)
          for (int cidx = 0; cidx < m; ++cidx) {
            kkt(m + 1 + r, cidx) = t.eq_c(r, cidx);
            kkt(cidx, m + 1 + r) = t.eq_c(r, cidx);
          }
        Eigen::VectorXd rhs(m + 1 + neq);
        rhs.head(m + 1) = -grad;
        rhs.tail(neq) = t.eq_d - t.eq_c * y;
        Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
        dz = sol.head(m + 1);
      } else {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() != Eigen::Success) {
          ldlt.compute(hess + 1e-10 * Eigen::MatrixXd::Identity(m + 1, m + 1));
        }
        dz = ldlt.solve(-grad);
      }
      if (!dz.allFinite()) {
        out.numeric_failure = true;
        out.y = y;
        return out;
      }
      double decrement2 = -grad.dot(dz);
      ++out.newton_steps;
      // Line search keeping s - Fi > 0 and the box strict.
      auto ok_point = [&](const Eigen::VectorXd& yy, double ss) {
        for (int i = 0; i < m; ++i)
          if (!(yy(i) > t.ylo && yy(i) < t.yhi)) return false;
        for (const auto& c : t.cons)
          if (!(lse(c, yy, nullptr, nullptr) < ss)) return false;
        return true;
      };
      double alpha = 1.0;
      bool stepped = false;
      for (int ls = 0; ls < 60; ++ls) {
        Eigen::VectorXd ycand = y + alpha * dz.head(m);
        double scand = s + alpha * dz(m);
        if (ok_point(ycand, scand)) {
          y = ycand;
          s = scand;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (max_violation(y) < -1e-7) {
        out.feasible = true;
        out.y = y;
        return out;
      }
      if (!stepped || decrement2 * 0.5 <= 1e-13) break;
    }
    if (static_cast<double>(nbarrier + 1) / tb <= 1e-10) break;
    tb /= set.mu_stage_factor;
  }
  out.feasible = max_violation(y) < 0.0;
  out.y = y;
  out.violation = s;
  return out;
}

// Stationarity residual with polished multipliers: start from the barrier
// duals 1/(t * -F_i), refine by least squares over the active columns, clamp
// at zero. The result is a certified ||grad F0 + sum lambda_i grad F_i||_inf.
double kkt_stationarity(const Transformed& t, const Eigen::VectorXd& y, double tb) {
  Eigen::VectorXd g0 = Eigen::VectorXd::Zero(t.m);
  if (t.has_objective) lse(t.obj, y, &g0, nullptr);
  std::vector<Eigen::VectorXd> cols;
  Eigen::VectorXd g;
  for (const auto& c : t.cons) {
    double f = lse(c, y, &g, nullptr);
    double dual = 1.0 / (tb * (-f));
    if (dual > 1e-14) cols.push_back(g);
  }
  for (int i = 0; i < t.m; ++i) {
    if (1.0 / (tb * (y(i) - t.ylo)) > 1e-14) cols.push_back(-Eigen::VectorXd::Unit(t.m, i));
    if (1.0 / (tb * (t.yhi - y(i))) > 1e-14) cols.push_back(Eigen::VectorXd::Unit(t.m, i));
  }
  if (t.has_eq)
    for (int r = 0; r < t.eq_c.rows(); ++r) {
      cols.push_back(t.eq_c.row(r).transpose());
      cols.push_back(-t.eq_c.row(r).transpose());  // free-sign dual
    }
  if (cols.empty()) return g0.lpNorm<Eigen::Infinity>();
  // Nonnegative least squares by active-set column removal.
  std::vector<int> active(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) active[j] = static_cast<int>(j);
  double polished = g0.lpNorm<Eigen::Infinity>();
  for (int round = 0; round < static_cast<int>(cols.size()) + 1 && !active.empty(); ++round) {
    Eigen::MatrixXd a(t.m, static_cast<int>(active.size()));
    for (int j = 0; j < a.cols(); ++j) a.col(j) = cols[active[j]];
    Eigen::VectorXd lambda = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-g0);
    int worst = -1;
    double worst_val = -1e-12;
    for (int j = 0; j < lambda.size(); ++j)
      if (lambda(j) < worst_val) {
        worst_val = lambda(j);
        worst = j;
      }
    if (worst < 0) {
      polished = std::min(polished, (g0 + a * lambda.cwiseMax(0.0)).lpNorm<Eigen::Infinity>());
      break;
    }
    active.erase(active.begin() + worst);
  }
  // Raw barrier-dual residual as a fallback; report the better certificate.
  SolverSettings dummy;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  Phase2 ph(t, dummy);
  ph.derivatives(y, tb, grad, hess);
  return std::min(polished, grad.lpNorm<Eigen::Infinity>() / tb);
}

}  // namespace

std::vector<std::vector<double>> log_domain_hessian(const Posynomial& p,
                                                    const std::vector<double>& y) {
  int m = static_cast<int>(y.size());
  LogBlock blk = to_log_block(p, m);
  Eigen::VectorXd yy = Eigen::Map<const Eigen::VectorXd>(y.data(), m);
  Eigen::MatrixXd h;
  lse(blk, yy, nullptr, &h);
  std::vector<std::vector<double>> out(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[i][j] = h(i, j);
  return out;
}

SolveResult solve_gp(const GeometricProgram& gp, const SolverSettings& settings) {
  SolveResult res;
  if (gp.num_vars == 0) {
    res.status = SolveStatus::Optimal;
    res.objective_value = eval_posynomial(gp.objective, {});
    return res;
  }
  Transformed t = transform(gp, settings);
  int total_newton = 0;

  Phase1Result p1 = phase1(t, settings);
  total_newton += p1.newton_steps;
  if (p1.numeric_failure) {
    res.status = SolveStatus::NumericFailure;
    res.iterations = total_newton;
    res.message = "phase 1: non-finite Newton step";
    return res;
  }
  if (!p1.feasible) {
    res.status = SolveStatus::Infeasible;
    res.iterations = total_newton;
    res.message = "phase 1: minimum log-violation " + std::to_string(p1.violation);
    res.assignment.assign(gp.num_vars, 0.0);
    for (int i = 0; i < gp.num_vars; ++i) res.assignment[i] = std::exp(p1.y(i));
    return res;
  }

  Eigen::VectorXd y = p1.y;
  Phase2 ph(t, settings);
  double tb = settings.t0;
  int nbarrier = static_cast<int>(t.cons.size()) + 2 * t.m;
  bool numeric_failure = false;
  bool converged = !t.has_objective;
  if (t.has_objective) {
    for (int stage = 0; stage < settings.max_stages; ++stage) {
      CenterOutcome c = ph.center(y, tb);
      total_newton += c.newton_steps;
      if (!c.ok) {
        numeric_failure = true;
        break;
      }
      if (static_cast<double>(nbarrier) / tb <= settings.gap_tol) {
        converged = true;
        break;
      }
      tb /= settings.mu_stage_factor;
    }
  } else {
    CenterOutcome c = ph.center(y, 1.0);
    total_newton += c.newton_steps;
  }

  res.iterations = total_newton;
  res.assignment.assign(gp.num_vars, 0.0);
  for (int i = 0; i < gp.num_vars; ++i) {
    res.assignment[i] = std::exp(y(i));
    if (res.assignment[i] <= settings.zero_threshold) res.numerically_zero.push_back(i);
  }
  res.objective_value = t.has_objective ? std::exp(lse(t.obj, y, nullptr, nullptr)) : 0.0;

  res.kkt_residual = kkt_stationarity(t, y, tb);

  if (res.objective_value < settings.unbounded_floor) {
    res.status = SolveStatus::Unbounded;
  } else if (numeric_failure) {
    res.status = SolveStatus::NumericFailure;
  } else if (!converged) {
    res.status = SolveStatus::IterationLimit;
  } else if (res.kkt_residual <= settings.kkt_tol &&
             check_feasible(gp, res.assignment, settings.feas_tol)) {
    res.status = SolveStatus::Optimal;
  } else {
    res.status = SolveStatus::IterationLimit;
    res.message = "stationarity residual " + std::to_string(res.kkt_residual);
  }
  return res;
}

namespace {

struct SignSplit {
  Posynomial pos, neg;  // p(z) - n(z); neg stores magnitudes
};

SignSplit split_signs(const Posynomial& p) {
  SignSplit s;
  for (const auto& mono : p) {
    if (mono.coeff > 0) {
      s.pos.push_back(mono);
    } else if (mono.coeff < 0) {
      PosyMonomial m = mono;
      m.coeff = -m.coeff;
      s.neg.push_back(m);
    }
  }
  return s;
}

// Best local monomial approximation of a posynomial at z0 (AM-GM, tight at z0).
PosyMonomial condense(const Posynomial& p, const std::vector<double>& z0, int m) {
  double total = 0.0;
  std::vector<double> vals(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    vals[k] = eval_monomial(p[k], z0);
    total += vals[k];
  }
  PosyMonomial out;
  out.exponents.assign(m, Rational(0));
  double logc = 0.0;
  std::vector<double> exps(m, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    double w = vals[k] / total;
    if (w <= 0.0) continue;
    logc += w * (std::log(p[k].coeff) - std::log(w));
    for (int i = 0; i < m; ++i) exps[i] += w * to_double(p[k].exponents[i]);
  }
  out.coeff = std::exp(logc);
  for (int i = 0; i < m; ++i) out.exponents[i] = rational_from_double(exps[i]);
  return out;
}

Posynomial divide_by_monomial(const Posynomial& p, const PosyMonomial& m) {
  Posynomial out;
  for (const auto& mono : p) {
    PosyMonomial q = mono;
    q.coeff /= m.coeff;
    for (std::size_t i = 0; i < q.exponents.size(); ++i) q.exponents[i] -= m.exponents[i];
    out.push_back(std::move(q));
  }
  return out;
}

double eval_signed(const Posynomial& p, const std::vector<double>& z) {
  double s = 0.0;
  for (const auto& m : p) s += eval_monomial(m, z);
  return s;
}

}  // namespace

SolveResult solve_signomial(const SignomialProgram& sp, const SolverSettings& settings,
                            const std::optional<std::vector<double>>& start) {
  bool any_negative = false;
  for (const auto& m : sp.objective)
    if (m.coeff < 0) any_negative = true;
  for (const auto& c : sp.ineq_constraints)
    for (const auto& m : c)
      if (m.coeff < 0) any_negative = true;
  if (!any_negative) {
    GeometricProgram gp{sp.num_vars, sp.var_names, sp.objective, sp.ineq_constraints,
                        sp.eq_constraints};
    return solve_gp(gp, settings);
  }

  int m = sp.num_vars;
  SignSplit obj_split = split_signs(sp.objective);
  bool epigraph = !obj_split.neg.empty();
  std::vector<SignSplit> con_splits;
  for (const auto& c : sp.ineq_constraints) con_splits.push_back(split_signs(c));

  std::vector<std::vector<double>> anchors;
  if (start && static_cast<int>(start->size()) == m) anchors.push_back(*start);
  anchors.push_back(std::vector<double>(m, 1.0));
  anchors.push_back(std::vector<double>(m, 0.1));
  anchors.push_back(std::vector<double>(m, 10.0));

  auto build_and_solve = [&](const std::vector<double>& z0, double tau0,
                             double shift) -> SolveResult {
    GeometricProgram gp;
    gp.num_vars = epigraph ? m + 1 : m;
    gp.var_names = sp.var_names;
    if (epigraph) gp.var_names.push_back("__tau");
    auto widen = [&](const Posynomial& p) {
      Posynomial out = p;
      if (epigraph)
        for (auto& mono : out) mono.exponents.push_back(Rational(0));
      return out;
    };
    if (epigraph) {
      PosyMonomial tau;
      tau.coeff = 1.0;
      tau.exponents.assign(m + 1, Rational(0));
      tau.exponents[m] = 1;
      gp.objective = {tau};
      // (qp + shift) / condensed(tau + qn) <= 1
      Posynomial denom;
      PosyMonomial tau_term = tau;
      denom.push_back(tau_term);
      for (const auto& mono : widen(obj_split.neg)) denom.push_back(mono);
      std::vector<double> z0ext = z0;
      z0ext.push_back(tau0);
      PosyMonomial mono_d = condense(denom, z0ext, m + 1);
      Posynomial numer = widen(obj_split.pos);
      PosyMonomial c;
      c.coeff = shift;
      c.exponents.assign(m + 1, Rational(0));
      numer.push_back(c);
      gp.ineq_constraints.push_back(divide_by_monomial(numer, mono_d));
    } else {
      gp.objective = widen(obj_split.pos);
    }
    for (const auto& cs : con_splits) {
      if (cs.neg.empty()) {
        gp.ineq_constraints.push_back(widen(cs.pos));
        continue;
      }
      Posynomial denom;
      PosyMonomial one;
      one.coeff = 1.0;
      one.exponents.assign(gp.num_vars, Rational(0));
      denom.push_back(one);
      for (const auto& mono : widen(cs.neg)) denom.push_back(mono);
      std::vector<double> z0ext = z0;
      if (epigraph) z0ext.push_back(tau0);
      PosyMonomial mono_d = condense(denom, z0ext, gp.num_vars);
      gp.ineq_constraints.push_back(divide_by_monomial(widen(cs.pos), mono_d));
    }
    for (const auto& q : sp.eq_constraints) {
      PosyMonomial qq = q;
      if (epigraph) qq.exponents.push_back(Rational(0));
      gp.eq_constraints.push_back(qq);
    }
    return solve_gp(gp, settings);
  };

  for (const auto& anchor : anchors) {
    double q0 = eval_signed(sp.objective, anchor);
    double shift = 1.0 + std::max(0.0, -2.0 * q0);
    std::vector<double> z = anchor;
    double tau = std::max(q0 + shift, 1e-3);
    SolveResult last;
    bool seeded = false;
    int outer = 0;
    double prev_obj = q0;
    for (outer = 0; outer < settings.sp_max_outer; ++outer) {
      SolveResult r = build_and_solve(z, tau, shift);
      if (r.status != SolveStatus::Optimal && r.status != SolveStatus::IterationLimit) {
        if (!seeded) break;  // this anchor does not work at all
        r = last;
        break;
      }
      seeded = true;
      last = r;
      z.assign(r.assignment.begin(), r.assignment.begin() + m);
      double q1 = eval_signed(sp.objective, z);
      if (epigraph) {
        double tau_solved = r.assignment[m];
        if (tau_solved < 1e-6) {
          // Shift too small: the epigraph variable hit its floor. Enlarge and redo.
          shift = shift * 4.0 + 4.0 * std::abs(q1);
        }
        tau = std::max(q1 + shift, 1e-8);
      }
      if (std::abs(q1 - prev_obj) <= settings.sp_tol * std::max(1.0, std::abs(prev_obj))) {
        ++outer;
        break;
      }
      prev_obj = q1;
    }
    if (!seeded) continue;
    SolveResult res = last;
    res.heuristic = true;
    res.objective_value = eval_signed(sp.objective, z);
    res.assignment = z;
    if (epigraph) {
      res.numerically_zero.clear();
      for (int i = 0; i < m; ++i)
        if (z[i] <= settings.zero_threshold) res.numerically_zero.push_back(i);
    }
    if (outer >= settings.sp_max_outer) res.status = SolveStatus::IterationLimit;
    res.iterations += outer;
    return res;
  }
  throw NoStartingPoint("signomial condensation found no workable starting point");
}

}  // namespace sonc
