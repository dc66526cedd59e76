#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sonc/cover.hpp"
#include "sonc/errors.hpp"
#include "sonc/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace sonc;

namespace {

Triangulation tri1_cells() {
  return triangulation_from_json(nlohmann::json::parse(
      "[[[0,0],[2,6],[4,6]],[[0,0],[4,6],[8,2]]]"));
}

Triangulation tri2_cells() {
  return triangulation_from_json(nlohmann::json::parse(
      "[[[0,0],[2,2],[2,6]],[[0,0],[2,2],[6,2]],[[2,2],[2,6],[6,2]]]"));
}

Triangulation tri3_cells() {
  return triangulation_from_json(nlohmann::json::parse(
      "[[[0,0],[0,2],[4,0]],[[0,2],[2,4],[4,0]],[[2,4],[4,0],[4,4]]]"));
}

Triangulation tri4_cells() {
  return triangulation_from_json(nlohmann::json::parse(
      "[[[0,0],[4,0],[6,4]],[[0,0],[6,4],[2,4]]]"));
}

}  // namespace

TEST_CASE("decompose: Triangulation-1 equal split reproduces the printed pieces") {
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells());
  REQUIRE(dec.pieces.size() == 2);
  Polynomial g1 = Polynomial::parse(
      "3 + x1^2*x2^6 + x1^4*x2^6 - 0.6*x1^2*x2^3 - 0.85*x1^3*x2^5", 2);
  Polynomial g2 = Polynomial::parse(
      "3 + x1^4*x2^6 + x1^8*x2^2 - 0.6*x1^2*x2^3 - 0.9*x1^4*x2^3 - 0.73*x1^5*x2^2 - 1.14*x1^7*x2^2",
      2);
  CHECK(dec.pieces[0] == g1);
  CHECK(dec.pieces[1] == g2);
  CHECK(dec.pieces[0] + dec.pieces[1] == fixtures::tri1_f());
}

TEST_CASE("decompose: an ST-polynomial with a one-simplex triangulation is itself") {
  Polynomial f = fixtures::motzkin();
  CoverDecomposition dec = decompose(f);
  REQUIRE(dec.pieces.size() == 1);
  CHECK(dec.pieces[0] == f);
}

TEST_CASE("decompose: Triangulation-2 equal split reproduces the printed pieces") {
  CoverDecomposition dec = decompose(fixtures::tri2_f(), tri2_cells());
  REQUIRE(dec.pieces.size() == 3);
  CHECK(dec.pieces[0] ==
        Polynomial::parse("0.5 + 1.5*x1^2*x2^6 + 2*x1^2*x2^2 - x1*x2^2", 2));
  CHECK(dec.pieces[1] == Polynomial::parse("0.5 + x1^6*x2^2 + 2*x1^2*x2^2 - 2*x1^2*x2", 2));
  CHECK(dec.pieces[2] ==
        Polynomial::parse("1.5*x1^2*x2^6 + x1^6*x2^2 + 2*x1^2*x2^2 - 3*x1^3*x2^3", 2));
  CHECK(dec.pieces[0] + dec.pieces[1] + dec.pieces[2] == fixtures::tri2_f());
}

TEST_CASE("decompose: sign preservation and exact reconstruction on the auto route") {
  CoverDecomposition dec = decompose(fixtures::tri1_f());
  Polynomial sum(2);
  for (const auto& piece : dec.pieces) sum = sum + piece;
  CHECK(sum == fixtures::tri1_f());
  for (const auto& entry : dec.splits) {
    Rational parent = fixtures::tri1_f().coeff(entry.exp);
    for (const auto& w : entry.weights) {
      if (w == 0) continue;
      CHECK((w > 0) == (parent > 0));
    }
  }
}

TEST_CASE("decompose: uncovered tail is reported") {
  // triangulate only the left simplex; the right-hand tails stick out
  Triangulation left = triangulation_from_json(nlohmann::json::parse("[[[0,0],[2,6],[4,6]]]"));
  CHECK_THROWS_AS(decompose(fixtures::tri1_f(), left), TailNotCovered);
}

TEST_CASE("bound_via_cover: Triangulation-1 equal split reaches 3.269") {
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells());
  CoverBound cb = bound_via_cover(fixtures::tri1_f(), dec);
  REQUIRE(cb.lower_bound.has_value());
  CHECK(cb.piece_m[0] == doctest::Approx(0.2121).epsilon(2e-3));
  CHECK(cb.piece_m[1] == doctest::Approx(2.5193).epsilon(2e-3));
  CHECK(*cb.lower_bound == doctest::Approx(3.269).epsilon(5e-3));
  for (std::size_t i = 0; i < dec.pieces.size(); ++i)
    CHECK(verify_certificate(dec.pieces[i], cb.certificates[i]));
}

TEST_CASE("bound_via_cover: Triangulation-1 with the paper's hand split reaches 3.572") {
  WeightOverrides ov;
  ov[{2, 3}] = {{0, Rational(-12, 10)}, {1, Rational(0)}};
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells(), ov);
  CHECK(dec.pieces[0] ==
        Polynomial::parse("3 + x1^2*x2^6 + x1^4*x2^6 - 1.2*x1^2*x2^3 - 0.85*x1^3*x2^5", 2));
  CoverBound cb = bound_via_cover(fixtures::tri1_f(), dec);
  REQUIRE(cb.lower_bound.has_value());
  CHECK(*cb.lower_bound == doctest::Approx(3.572).epsilon(5e-3));
}

TEST_CASE("bound_via_cover: Triangulation-3 coefficient requirements at x1^4") {
  CoverDecomposition dec = decompose(fixtures::tri3_f(), tri3_cells());
  std::vector<Exponent> targets(3, Exponent{4, 0});
  CoverBound cb = bound_via_cover(fixtures::tri3_f(), dec, targets);
  CHECK_FALSE(cb.lower_bound.has_value());  // no origin targets: coefficient mode
  CHECK(cb.piece_m[0] == doctest::Approx(0.0625).epsilon(2e-3));
  CHECK(cb.piece_m[1] == doctest::Approx(4.2867).epsilon(2e-3));
  CHECK(cb.piece_m[2] == doctest::Approx(0.0625).epsilon(2e-3));
  CHECK(cb.coefficient_requirements.at({4, 0}) == doctest::Approx(4.412).epsilon(5e-3));
}

TEST_CASE("bound_via_cover: Triangulation-2 mixed targets give the paper's bound") {
  CoverDecomposition dec = decompose(fixtures::tri2_f(), tri2_cells());
  std::vector<Exponent> targets{{0, 0}, {0, 0}, {2, 6}};
  CoverBound cb = bound_via_cover(fixtures::tri2_f(), dec, targets);
  REQUIRE(cb.lower_bound.has_value());
  CHECK(cb.piece_m[0] == doctest::Approx(0.0722).epsilon(2e-3));
  CHECK(cb.piece_m[1] == doctest::Approx(0.3536).epsilon(2e-3));
  CHECK(cb.piece_m[2] == doctest::Approx(0.3164).epsilon(2e-3));
  CHECK(*cb.lower_bound == doctest::Approx(0.5732).epsilon(2e-3));
}

TEST_CASE("bound_via_cover: Triangulation-2 alternative split gives 0.6583") {
  WeightOverrides ov;
  ov[{0, 0}] = {{0, Rational(1, 4)}, {1, Rational(3, 4)}};
  ov[{2, 6}] = {{0, Rational(2)}, {2, Rational(1)}};
  ov[{6, 2}] = {{1, Rational(1)}, {2, Rational(1)}};
  ov[{2, 2}] = {{0, Rational(1217, 1000)}, {1, Rational(3652, 1000)}, {2, Rational(1131, 1000)}};
  CoverDecomposition dec = decompose(fixtures::tri2_f(), tri2_cells(), ov);
  std::vector<Exponent> targets{{0, 0}, {0, 0}, {2, 6}};
  CoverBound cb = bound_via_cover(fixtures::tri2_f(), dec, targets);
  REQUIRE(cb.lower_bound.has_value());
  CHECK(cb.piece_m[0] == doctest::Approx(0.0801).epsilon(2e-3));
  CHECK(cb.piece_m[1] == doctest::Approx(0.2616).epsilon(2e-3));
  CHECK(*cb.lower_bound == doctest::Approx(0.6583).epsilon(2e-3));
}

TEST_CASE("bound_via_cover: rejects a target that is not a simplex vertex") {
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells());
  std::vector<Exponent> targets{{2, 3}, {0, 0}};
  CHECK_THROWS_AS(bound_via_cover(fixtures::tri1_f(), dec, targets), TargetNotVertex);
}

TEST_CASE("improve_weights: single piece is returned unchanged") {
  CoverDecomposition dec = decompose(fixtures::motzkin());
  CoverDecomposition out = improve_weights(fixtures::motzkin(), dec, std::nullopt, 50);
  CHECK(out.pieces[0] == dec.pieces[0]);
}

TEST_CASE("improve_weights: Triangulation-1 from equal split reaches the hand split") {
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells());
  CoverBound before = bound_via_cover(fixtures::tri1_f(), dec);
  CoverDecomposition best = improve_weights(fixtures::tri1_f(), dec, std::nullopt, 200);
  CoverBound after = bound_via_cover(fixtures::tri1_f(), best);
  REQUIRE(after.lower_bound.has_value());
  CHECK(*after.lower_bound >= *before.lower_bound - 1e-9);  // never worse
  CHECK(*after.lower_bound >= 3.572 - 5e-3);                // the paper's split is reachable
  Polynomial sum(2);
  for (const auto& piece : best.pieces) sum = sum + piece;
  CHECK(sum == fixtures::tri1_f());  // exact reconstruction is preserved
}

TEST_CASE("improve_weights: Triangulation-2 from equal split improves toward 0.6583") {
  CoverDecomposition dec = decompose(fixtures::tri2_f(), tri2_cells());
  std::vector<Exponent> targets{{0, 0}, {0, 0}, {2, 6}};
  CoverBound before = bound_via_cover(fixtures::tri2_f(), dec, targets);
  CoverDecomposition best = improve_weights(fixtures::tri2_f(), dec, targets, 300);
  CoverBound after = bound_via_cover(fixtures::tri2_f(), best, targets);
  REQUIRE(after.lower_bound.has_value());
  CHECK(*after.lower_bound >= *before.lower_bound - 1e-9);
  CHECK(*after.lower_bound >= 0.5732 - 2e-3);
}

TEST_CASE("constrained_cover_bound: Triangulation-4 bound 1 with zero piece optima") {
  ConstrainedProblem p{fixtures::tri4_f(), {fixtures::tri4_g()}};
  ConstrainedCoverBound cb = constrained_cover_bound(p, tri4_cells());
  CHECK(cb.bound == doctest::Approx(1.0).epsilon(1e-6));
  REQUIRE(cb.piece_m.size() == 2);
  CHECK(std::abs(cb.piece_m[0]) <= 1e-6);
  CHECK(std::abs(cb.piece_m[1]) <= 1e-6);
  // the bound is backed by a certificate for the concrete G(mu*)
  REQUIRE(cb.certificate.has_value());
  CHECK(verify_certificate(assemble_g(p, cb.mu), *cb.certificate));
}

TEST_CASE("constrained_cover_bound: exponent scaling keeps the bound and the speed") {
  for (int k : {10, 20}) {
    ConstrainedProblem p{fixtures::tri4_f().scale_exponents(k),
                         {fixtures::tri4_g().scale_exponents(k)}};
    Triangulation cells = tri4_cells();
    for (auto& pt : cells.points)
      for (int& v : pt) v *= k;
    ConstrainedCoverBound cb = constrained_cover_bound(p, cells);
    CHECK(cb.bound == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("constrained_cover_bound: auto triangulation also certifies Triangulation-4") {
  ConstrainedProblem p{fixtures::tri4_f(), {fixtures::tri4_g()}};
  ConstrainedCoverBound cb = constrained_cover_bound(p);
  CHECK(cb.bound == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("constrained_cover_bound: s = 0 matches bound_via_cover") {
  ConstrainedProblem p{fixtures::tri1_f(), {}};
  ConstrainedCoverBound cc = constrained_cover_bound(p, tri1_cells());
  CoverBound cb =
      bound_via_cover(fixtures::tri1_f(), decompose(fixtures::tri1_f(), tri1_cells()));
  REQUIRE(cb.lower_bound.has_value());
  CHECK(cc.bound == doctest::Approx(*cb.lower_bound).epsilon(1e-6));
}

TEST_CASE("cover bounds are validated by the sampling oracle") {
  CoverDecomposition dec = decompose(fixtures::tri1_f(), tri1_cells());
  CoverBound cb = bound_via_cover(fixtures::tri1_f(), dec);
  REQUIRE(cb.lower_bound.has_value());
  CHECK(validate_bound(fixtures::tri1_f(), {}, *cb.lower_bound, default_box(2, 3.0), 6000, 3));
}

TEST_CASE("triangulation JSON round trip") {
  Triangulation tri = tri2_cells();
  nlohmann::json j = triangulation_to_json(tri);
  Triangulation back = triangulation_from_json(j);
  REQUIRE(back.simplices.size() == tri.simplices.size());
  for (std::size_t s = 0; s < tri.simplices.size(); ++s) {
    std::set<Exponent> a, b;
    for (int i : tri.simplices[s]) a.insert(tri.points[i]);
    for (int i : back.simplices[s]) b.insert(back.points[i]);
    CHECK(a == b);
  }
}
