#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sonc/constrained.hpp"
#include "sonc/errors.hpp"
#include "sonc/gp.hpp"
#include "sonc/gp_solver.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace sonc;

namespace {

PosyMonomial mono(double coeff, std::vector<Rational> exps) {
  return PosyMonomial{coeff, std::move(exps)};
}

}  // namespace

TEST_CASE("solve_gp: minimize z subject to 2/z <= 1") {
  GeometricProgram gp;
  gp.num_vars = 1;
  gp.var_names = {"z1"};
  gp.objective = {mono(1.0, {Rational(1)})};
  gp.ineq_constraints = {{mono(2.0, {Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.assignment[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.kkt_residual <= 1e-6);
}

TEST_CASE("solve_gp: hyperbola minimum z1 z2 with 1/(z1 z2) <= 1") {
  GeometricProgram gp;
  gp.num_vars = 2;
  gp.var_names = {"z1", "z2"};
  gp.objective = {mono(1.0, {Rational(1), Rational(1)})};
  gp.ineq_constraints = {{mono(1.0, {Rational(-1), Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.assignment[0] * r.assignment[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve_gp: monomial equality constraint") {
  // minimize z1 + z2 subject to z1 z2 = 4; optimum 4 at z1 = z2 = 2
  GeometricProgram gp;
  gp.num_vars = 2;
  gp.var_names = {"z1", "z2"};
  gp.objective = {mono(1.0, {Rational(1), Rational(0)}), mono(1.0, {Rational(0), Rational(1)})};
  gp.eq_constraints = {mono(0.25, {Rational(1), Rational(1)})};
  SolveResult r = solve_gp(gp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(r.assignment[0] == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("solve_gp: infeasible program is certified by phase 1") {
  GeometricProgram gp;
  gp.num_vars = 1;
  gp.var_names = {"z1"};
  gp.objective = {mono(1.0, {Rational(1)})};
  // z + 1/z <= 1 is impossible for z > 0
  gp.ineq_constraints = {{mono(1.0, {Rational(1)}), mono(1.0, {Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  CHECK(r.status == SolveStatus::Infeasible);
}

TEST_CASE("solve_gp: empty objective means feasibility only") {
  GeometricProgram gp;
  gp.num_vars = 1;
  gp.var_names = {"z1"};
  gp.ineq_constraints = {{mono(2.0, {Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == 0.0);
  CHECK(r.assignment[0] >= 2.0 - 1e-9);
}

TEST_CASE("solve_gp: Exa-Constrained2 program reproduces the paper's optimum") {
  ConstrainedProblem p{fixtures::c2_f(), {fixtures::c2_g()}};
  GStructure gs = build_g_structure(p);
  GeometricProgram gp = build_constrained_gp(gs, 0);
  REQUIRE(gp.num_vars == 7);
  SolveResult r = solve_gp(gp, default_sonc_settings());
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(0.5526).epsilon(2e-3));
  auto value_of = [&](const std::string& name) {
    for (int i = 0; i < gp.num_vars; ++i)
      if (gp.var_names[i] == name) return r.assignment[i];
    FAIL("missing variable ", name);
    return 0.0;
  };
  // paper: (a_b1, a_b2, a_bt1, a_bt2, b_b, b_bt, mu)
  //      = (0.9105, 0.0540, 0.0895, 0.0319, 1.0000, 0.0859, 0.0859)
  CHECK(value_of("a[(1,1)][(4,2)]") == doctest::Approx(0.9105).epsilon(5e-3));
  CHECK(value_of("a[(1,1)][(2,6)]") == doctest::Approx(0.0540).epsilon(5e-2));
  CHECK(value_of("a[(2,4)][(4,2)]") == doctest::Approx(0.0895).epsilon(5e-2));
  CHECK(value_of("a[(2,4)][(2,6)]") == doctest::Approx(0.0319).epsilon(5e-2));
  CHECK(value_of("b[(1,1)]") == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(value_of("b[(2,4)]") == doctest::Approx(0.0859).epsilon(5e-2));
  CHECK(value_of("mu1") == doctest::Approx(0.0859).epsilon(5e-2));
  // the paper's own assignment is feasible for the program we built
  std::vector<double> paper(7);
  for (int i = 0; i < 7; ++i) paper[i] = 0.0;
  auto set = [&](const std::string& name, double v) {
    for (int i = 0; i < gp.num_vars; ++i)
      if (gp.var_names[i] == name) paper[i] = v;
  };
  set("a[(1,1)][(4,2)]", 0.9105);
  set("a[(1,1)][(2,6)]", 0.0540);
  set("a[(2,4)][(4,2)]", 0.0895);
  set("a[(2,4)][(2,6)]", 0.0319);
  set("b[(1,1)]", 1.0);
  set("b[(2,4)]", 0.0859);
  set("mu1", 0.0859);
  CHECK(check_feasible(gp, paper, 1e-3));
}

TEST_CASE("check_feasible") {
  GeometricProgram gp;
  gp.num_vars = 1;
  gp.var_names = {"z1"};
  gp.objective = {mono(1.0, {Rational(1)})};
  gp.ineq_constraints = {{mono(2.0, {Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(check_feasible(gp, r.assignment, 1e-8));
  CHECK_FALSE(check_feasible(gp, {1.0}, 1e-8));
  CHECK_THROWS_AS(check_feasible(gp, {1.0, 1.0}, 1e-8), DimensionMismatch);
}

TEST_CASE("solve_signomial: a signomial that is actually a GP") {
  SignomialProgram sp;
  sp.num_vars = 1;
  sp.var_names = {"z1"};
  sp.objective = {mono(1.0, {Rational(1)})};
  sp.ineq_constraints = {{mono(2.0, {Rational(-1)})}};
  SolveResult r = solve_signomial(sp);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK_FALSE(r.heuristic);
  CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("solve_signomial: 2 - z <= 1 condenses to z = 1") {
  SignomialProgram sp;
  sp.num_vars = 1;
  sp.var_names = {"z1"};
  sp.objective = {mono(1.0, {Rational(1)})};
  sp.ineq_constraints = {{mono(2.0, {Rational(0)}), mono(-1.0, {Rational(1)})}};
  SolveResult r = solve_signomial(sp);
  REQUIRE((r.status == SolveStatus::Optimal || r.status == SolveStatus::IterationLimit));
  CHECK(r.heuristic);
  CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("solve_signomial: signed objective uses the epigraph route") {
  // minimize z + (4 - 2z) = 4 - z subject to z <= 3 (as z/3 <= 1); optimum 1.
  SignomialProgram sp;
  sp.num_vars = 1;
  sp.var_names = {"z1"};
  sp.objective = {mono(1.0, {Rational(1)}), mono(4.0, {Rational(0)}), mono(-2.0, {Rational(1)})};
  sp.ineq_constraints = {{mono(1.0 / 3.0, {Rational(1)})}};
  SolveResult r = solve_signomial(sp);
  REQUIRE((r.status == SolveStatus::Optimal || r.status == SolveStatus::IterationLimit));
  CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.assignment[0] == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("log-domain convexity: constraint Hessians are PSD at random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> yd(-2.0, 2.0);
  std::uniform_real_distribution<double> cd(0.1, 5.0);
  std::uniform_int_distribution<int> ed(-3, 3);
  for (int rep = 0; rep < 100; ++rep) {
    Posynomial p;
    for (int t = 0; t < 4; ++t)
      p.push_back(mono(cd(rng), {Rational(ed(rng)), Rational(ed(rng)), Rational(ed(rng))}));
    std::vector<double> y{yd(rng), yd(rng), yd(rng)};
    auto h = log_domain_hessian(p, y);
    // min eigenvalue of a 3x3 symmetric matrix via characteristic scan:
    // use Gershgorin-style check plus 2x2/3x3 principal minors (PSD test)
    double d1 = h[0][0];
    double d2 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    double d3 = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    CHECK(d1 >= -1e-9);
    CHECK(d2 >= -1e-9);
    CHECK(d3 >= -1e-9);
  }
}

TEST_CASE("determinism: identical runs produce identical floats") {
  ConstrainedProblem p{fixtures::c2_f(), {fixtures::c2_g()}};
  GStructure gs = build_g_structure(p);
  GeometricProgram gp = build_constrained_gp(gs, 0);
  SolveResult a = solve_gp(gp, default_sonc_settings());
  SolveResult b = solve_gp(gp, default_sonc_settings());
  CHECK(a.objective_value == b.objective_value);
  REQUIRE(a.assignment.size() == b.assignment.size());
  for (std::size_t i = 0; i < a.assignment.size(); ++i) CHECK(a.assignment[i] == b.assignment[i]);
}

TEST_CASE("monotone relaxation: dropping a constraint never raises the optimum") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> cd(0.5, 3.0);
  for (int rep = 0; rep < 10; ++rep) {
    GeometricProgram gp;
    gp.num_vars = 2;
    gp.var_names = {"z1", "z2"};
    gp.objective = {mono(cd(rng), {Rational(1), Rational(0)}),
                    mono(cd(rng), {Rational(0), Rational(1)})};
    gp.ineq_constraints = {{mono(cd(rng), {Rational(-1), Rational(0)})},
                           {mono(cd(rng), {Rational(0), Rational(-1)})},
                           {mono(cd(rng), {Rational(-1), Rational(-1)})}};
    SolveResult full = solve_gp(gp);
    REQUIRE(full.status == SolveStatus::Optimal);
    GeometricProgram relaxed = gp;
    relaxed.ineq_constraints.pop_back();
    SolveResult rel = solve_gp(relaxed);
    REQUIRE(rel.status == SolveStatus::Optimal);
    CHECK(rel.objective_value <= full.objective_value + 1e-9);
  }
}

TEST_CASE("variables pushed to zero are flagged as numerically zero") {
  // minimize z1 * z2 with z2 >= 1: z1 runs to its floor and is flagged.
  GeometricProgram gp;
  gp.num_vars = 2;
  gp.var_names = {"z1", "z2"};
  gp.objective = {mono(1.0, {Rational(1), Rational(1)})};
  gp.ineq_constraints = {{mono(1.0, {Rational(0), Rational(-1)})}};
  SolveResult r = solve_gp(gp);
  CHECK(r.objective_value <= 1e-20);
  REQUIRE(r.numerically_zero.size() >= 1);
  CHECK(r.numerically_zero[0] == 0);
}

TEST_CASE("gp_debug_dump carries variables, exponents, and log-coefficients") {
  GeometricProgram gp;
  gp.num_vars = 1;
  gp.var_names = {"z1"};
  gp.objective = {mono(std::exp(1.0), {Rational(1, 2)})};
  auto j = gp_debug_dump(gp);
  CHECK(j["variables"][0] == "z1");
  CHECK(j["objective"][0]["log_coeff"].get<double>() == doctest::Approx(1.0));
  CHECK(j["objective"][0]["exponents"][0] == "1/2");
}
