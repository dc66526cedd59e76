#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sonc/errors.hpp"
#include "sonc/exact_linalg.hpp"
#include "sonc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace sonc;

TEST_CASE("hull_vertices: Motzkin support") {
  std::vector<Exponent> pts{{0, 0}, {4, 2}, {2, 4}, {2, 2}};
  auto v = hull_vertices(pts);
  REQUIRE(v.size() == 3);
  CHECK(std::find(v.begin(), v.end(), Exponent{2, 2}) == v.end());
}

TEST_CASE("hull_vertices: single point and collinear midpoint") {
  CHECK(hull_vertices({{2, 2}}) == std::vector<Exponent>{{2, 2}});
  auto v = hull_vertices({{0, 0}, {2, 0}, {4, 0}});
  CHECK(v == std::vector<Exponent>{{0, 0}, {4, 0}});
}

TEST_CASE("hull_vertices: subset property and convex-combination via exact LP") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 8);
  for (int rep = 0; rep < 12; ++rep) {
    std::set<Exponent> uniq;
    while (uniq.size() < 9) uniq.insert({coord(rng), coord(rng)});
    std::vector<Exponent> pts(uniq.begin(), uniq.end());
    auto verts = hull_vertices(pts);
    for (const auto& v : verts) CHECK(uniq.count(v) == 1);
    for (const auto& p : pts) {
      RatMat a(3, RatVec(verts.size(), Rational(0)));
      RatVec b(3, Rational(0));
      for (std::size_t j = 0; j < verts.size(); ++j) {
        a[0][j] = verts[j][0];
        a[1][j] = verts[j][1];
        a[2][j] = 1;
      }
      b[0] = p[0];
      b[1] = p[1];
      b[2] = 1;
      CHECK(lp_feasible_eq(a, b));
    }
  }
}

TEST_CASE("analyze_support: Motzkin") {
  SupportAnalysis a = analyze_support(fixtures::motzkin());
  CHECK(a.clubsuit_ok);
  REQUIRE(a.delta_f.size() == 1);
  CHECK(a.delta_f[0] == Exponent{2, 2});
  CHECK(a.dimension == 2);
}

TEST_CASE("analyze_support: negative vertex coefficient violates clubsuit") {
  SupportAnalysis a = analyze_support(Polynomial::parse("-1*x1^2", 1));
  CHECK_FALSE(a.clubsuit_ok);
}

TEST_CASE("analyze_support: Triangulation-1 polynomial") {
  SupportAnalysis a = analyze_support(fixtures::tri1_f());
  std::vector<Exponent> want{{0, 0}, {2, 6}, {4, 6}, {8, 2}};
  std::sort(want.begin(), want.end(), GradedLexLess{});
  CHECK(a.vertices == want);
  CHECK(a.delta_f.size() == 5);
  CHECK(a.clubsuit_ok);
}

TEST_CASE("barycentric: worked example gives (3/10, 3/10, 2/5) exactly") {
  auto lam = barycentric({3, 2}, {{0, 0}, {2, 4}, {6, 2}});
  REQUIRE(lam.size() == 3);
  CHECK(lam[0] == Rational(3, 10));
  CHECK(lam[1] == Rational(3, 10));
  CHECK(lam[2] == Rational(2, 5));
}

TEST_CASE("barycentric: vertex case and independently solved system") {
  auto lam = barycentric({2, 4}, {{0, 0}, {2, 4}, {6, 2}});
  CHECK(lam == std::vector<Rational>{0, 1, 0});
  auto lam2 = barycentric({1, 1}, {{0, 0}, {0, 2}, {4, 0}});
  CHECK(lam2 == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
}

TEST_CASE("barycentric: errors") {
  CHECK_THROWS_AS(barycentric({9, 9}, {{0, 0}, {2, 4}, {6, 2}}), NotInSimplex);
  CHECK_THROWS_AS(barycentric({1, 1}, {{0, 0}, {1, 1}, {2, 2}}), DegenerateSimplex);
  CHECK_THROWS_AS(barycentric({1, 1, 1}, {{0, 0, 0}, {2, 0, 0}}), NotInSimplex);
}

TEST_CASE("barycentric identity: sum lambda_j alpha(j) = beta exactly") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coord(0, 10);
  int done = 0;
  while (done < 30) {
    std::vector<Exponent> simplex{{coord(rng), coord(rng)},
                                  {coord(rng), coord(rng)},
                                  {coord(rng), coord(rng)}};
    Exponent beta{coord(rng), coord(rng)};
    try {
      auto lam = barycentric(beta, simplex);
      Rational sum(0), x(0), y(0);
      for (std::size_t j = 0; j < 3; ++j) {
        sum += lam[j];
        x += lam[j] * simplex[j][0];
        y += lam[j] * simplex[j][1];
      }
      CHECK(sum == 1);
      CHECK(x == beta[0]);
      CHECK(y == beta[1]);
      ++done;
    } catch (const Error&) {
      // outside or degenerate draw; try again
    }
  }
}

TEST_CASE("st_form: Motzkin") {
  STForm st = st_form(fixtures::motzkin());
  CHECK(st.r() == 2);
  auto tails = st.delta_f_tails();
  REQUIRE(tails.size() == 1);
  CHECK(tails[0]->beta == Exponent{2, 2});
  CHECK(tails[0]->lambda == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

TEST_CASE("st_form: four hull vertices in the plane is not a simplex") {
  CHECK_THROWS_AS(st_form(fixtures::tri1_f()), NotSimplex);
}

TEST_CASE("st_form: interior monomial squares are legal tails") {
  // (2,2) of this polynomial lies inside conv{(0,0),(2,6),(6,2)}; the support
  // is an ST-polynomial with one square tail and three Delta(f) tails.
  STForm st = st_form(fixtures::tri2_f());
  CHECK(st.r() == 2);
  CHECK(st.tails.size() == 4);
  CHECK(st.delta_f_tails().size() == 3);
}

TEST_CASE("st_form: clubsuit violations are rejected") {
  CHECK_THROWS_AS(st_form(Polynomial::parse("-1*x1^2 + 1", 1)), ClubsuitViolated);
  CHECK_THROWS_AS(st_form(Polynomial::parse("1 + x1^3", 1)), ClubsuitViolated);
}

TEST_CASE("st_form: sums of monomial squares over a simplex have empty tails") {
  STForm st = st_form(Polynomial::parse("2 + x1^2 + 3*x2^4", 2));
  CHECK(st.tails.empty());
  CHECK(st.r() == 2);
}

TEST_CASE("st_form: constant polynomial is a 0-simplex") {
  STForm st = st_form(Polynomial::parse("5", 2));
  CHECK(st.r() == 0);
  CHECK(st.tails.empty());
}

TEST_CASE("triangulate_squares: Triangulation-1 square set") {
  Triangulation tri = triangulate_squares({{0, 0}, {2, 6}, {4, 6}, {8, 2}});
  REQUIRE(tri.simplices.size() == 2);
  std::set<std::set<Exponent>> cells;
  for (const auto& cell : tri.simplices) {
    std::set<Exponent> c;
    for (int idx : cell) c.insert(tri.points[idx]);
    cells.insert(c);
  }
  CHECK(cells.count({{0, 0}, {2, 6}, {4, 6}}) == 1);
  CHECK(cells.count({{0, 0}, {4, 6}, {8, 2}}) == 1);
}

TEST_CASE("triangulate_squares: a simplex set is returned as itself") {
  Triangulation tri = triangulate_squares({{0, 0}, {4, 2}, {2, 4}});
  REQUIRE(tri.simplices.size() == 1);
  CHECK(tri.simplices[0].size() == 3);
}

TEST_CASE("triangulate_squares: interior point stars the square set (paper's cover)") {
  Triangulation tri = triangulate_squares({{0, 0}, {2, 2}, {2, 6}, {6, 2}});
  REQUIRE(tri.simplices.size() == 3);
  std::set<std::set<Exponent>> cells;
  for (const auto& cell : tri.simplices) {
    std::set<Exponent> c;
    for (int idx : cell) c.insert(tri.points[idx]);
    cells.insert(c);
  }
  CHECK(cells.count({{0, 0}, {2, 2}, {2, 6}}) == 1);
  CHECK(cells.count({{0, 0}, {2, 2}, {6, 2}}) == 1);
  CHECK(cells.count({{2, 2}, {2, 6}, {6, 2}}) == 1);
}

TEST_CASE("triangulate_squares: Triangulation-3 square set matches the paper") {
  Triangulation tri = triangulate_squares({{0, 0}, {4, 0}, {0, 2}, {2, 4}, {4, 4}});
  REQUIRE(tri.simplices.size() == 3);
  std::set<std::set<Exponent>> cells;
  for (const auto& cell : tri.simplices) {
    std::set<Exponent> c;
    for (int idx : cell) c.insert(tri.points[idx]);
    cells.insert(c);
  }
  CHECK(cells.count({{0, 0}, {0, 2}, {4, 0}}) == 1);
  CHECK(cells.count({{0, 2}, {2, 4}, {4, 0}}) == 1);
  CHECK(cells.count({{2, 4}, {4, 0}, {4, 4}}) == 1);
}

TEST_CASE("triangulate_squares: degenerate support is rejected") {
  CHECK_THROWS_AS(triangulate_squares({{0, 0}, {2, 0}, {4, 0}}), DegenerateSupport);
}

TEST_CASE("triangulation cell volumes add up to the hull volume (exact shoelace oracle)") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int rep = 0; rep < 12; ++rep) {
    std::set<Exponent> uniq;
    while (uniq.size() < 7) uniq.insert({2 * coord(rng), 2 * coord(rng)});
    std::vector<Exponent> pts(uniq.begin(), uniq.end());
    Triangulation tri;
    try {
      tri = triangulate_squares(pts);
    } catch (const DegenerateSupport&) {
      continue;
    }
    Rational total(0);
    for (const auto& cell : tri.simplices) {
      std::vector<Exponent> verts;
      for (int idx : cell) verts.push_back(tri.points[idx]);
      Rational v = simplex_volume_factorial(verts);
      CHECK(v > 0);  // no flat cells
      total += v;
    }
    auto verts = hull_vertices(pts);
    double cx = 0, cy = 0;
    for (const auto& v : verts) {
      cx += v[0];
      cy += v[1];
    }
    cx /= static_cast<double>(verts.size());
    cy /= static_cast<double>(verts.size());
    std::vector<std::pair<double, Exponent>> ordered;
    for (const auto& v : verts) ordered.emplace_back(std::atan2(v[1] - cy, v[0] - cx), v);
    std::sort(ordered.begin(), ordered.end());
    Rational two_area(0);
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      const auto& a = ordered[i].second;
      const auto& b = ordered[(i + 1) % ordered.size()].second;
      two_area += Rational(a[0]) * Rational(b[1]) - Rational(b[0]) * Rational(a[1]);
    }
    if (two_area < 0) two_area = -two_area;
    CHECK(total == two_area);
  }
}

TEST_CASE("triangulate_squares: 3-d square set gets a valid full-dimensional triangulation") {
  Triangulation tri =
      triangulate_squares({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {2, 2, 2}});
  Rational total(0);
  for (const auto& cell : tri.simplices) {
    std::vector<Exponent> verts;
    for (int idx : cell) verts.push_back(tri.points[idx]);
    REQUIRE(verts.size() == 4);
    Rational v = simplex_volume_factorial(verts);
    CHECK(v > 0);
    total += v;
  }
  CHECK(total > 0);
  // pairwise disjoint interiors: each cell's centroid avoids every other cell
  for (std::size_t a = 0; a < tri.simplices.size(); ++a) {
    RatVec centroid(3, Rational(0));
    for (int idx : tri.simplices[a])
      for (int i = 0; i < 3; ++i) centroid[i] += Rational(tri.points[idx][i], 4);
    for (std::size_t b = 0; b < tri.simplices.size(); ++b) {
      if (a == b) continue;
      std::vector<Exponent> verts;
      for (int idx : tri.simplices[b]) verts.push_back(tri.points[idx]);
      // scale centroid by 4 to stay integral: point 4c against 4-scaled cell
      std::vector<Exponent> scaled;
      for (const auto& v : verts) {
        Exponent s(v);
        for (int& q : s) q *= 4;
        scaled.push_back(s);
      }
      Exponent c4(3);
      for (int i = 0; i < 3; ++i) c4[i] = static_cast<int>((centroid[i] * 4).convert_to<long>());
      auto lam = barycentric_unclamped(c4, scaled);
      bool strictly_inside = lam.has_value();
      if (strictly_inside)
        for (const auto& l : *lam)
          if (l <= 0) strictly_inside = false;
      CHECK_FALSE(strictly_inside);
    }
  }
}
