#include "sonc/geometry.hpp"

#include "sonc/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sonc {

namespace {

std::vector<Exponent> dedupe_sorted(std::vector<Exponent> points) {
  std::sort(points.begin(), points.end(), GradedLexLess{});
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

int affine_rank(const std::vector<Exponent>& points) {
  if (points.empty()) return 0;
  RatMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVec row;
    for (std::size_t j = 0; j < points[0].size(); ++j)
      row.emplace_back(points[i][j] - points[0][j]);
    diffs.push_back(std::move(row));
  }
  if (diffs.empty()) return 1;
  return rat_rank(diffs) + 1;  // number of affinely independent points
}

// {lambda >= 0 : sum lambda_i q_i = p, sum lambda_i = 1} nonempty?
bool in_convex_hull(const Exponent& p, const std::vector<Exponent>& q) {
  if (q.empty()) return false;
  std::size_t dim = p.size();
  RatMat a(dim + 1, RatVec(q.size(), Rational(0)));
  RatVec b(dim + 1, Rational(0));
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = q[j][i];
    a[dim][j] = 1;
  }
  for (std::size_t i = 0; i < dim; ++i) b[i] = p[i];
  b[dim] = 1;
  return lp_feasible_eq(std::move(a), std::move(b));
}

}  // namespace

std::vector<const STForm::Tail*> STForm::delta_f_tails() const {
  std::vector<const Tail*> out;
  for (const auto& t : tails)
    if (!t.monomial_square) out.push_back(&t);
  return out;
}

std::optional<int> STForm::vertex_index(const Exponent& e) const {
  for (std::size_t i = 0; i < simplex_vertices.size(); ++i)
    if (simplex_vertices[i] == e) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<Exponent> hull_vertices(const std::vector<Exponent>& points) {
  if (points.empty()) throw InvalidInput("hull_vertices: empty point list");
  std::vector<Exponent> pts = dedupe_sorted(points);
  if (pts.size() == 1) return pts;
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Exponent> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!in_convex_hull(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

SupportAnalysis analyze_support(const Polynomial& f) {
  if (f.is_zero()) throw InvalidInput("analyze_support: zero polynomial");
  SupportAnalysis a;
  a.points = f.support();
  a.vertices = hull_vertices(a.points);
  std::set<Exponent> vset(a.vertices.begin(), a.vertices.end());
  for (const auto& p : a.points) {
    if (vset.count(p)) continue;
    a.delta_a.push_back(p);
    Term t{f.coeff(p), p};
    if (!is_monomial_square(t)) a.delta_f.push_back(p);
  }
  a.dimension = affine_rank(a.points) - 1;
  a.clubsuit_ok = true;
  for (const auto& v : a.vertices) {
    if (!all_even(v) || f.coeff(v) <= 0) {
      a.clubsuit_ok = false;
      break;
    }
  }
  return a;
}

std::optional<std::vector<Rational>> barycentric_unclamped(const Exponent& beta,
                                                           const std::vector<Exponent>& simplex) {
  if (simplex.empty()) throw InvalidInput("barycentric: empty simplex");
  std::size_t dim = beta.size();
  if (affine_rank(simplex) != static_cast<int>(simplex.size()))
    throw DegenerateSimplex("simplex points are affinely dependent");
  RatMat a(dim + 1, RatVec(simplex.size(), Rational(0)));
  RatVec b(dim + 1, Rational(0));
  for (std::size_t j = 0; j < simplex.size(); ++j) {
    if (simplex[j].size() != dim) throw DimensionMismatch("simplex/beta dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = simplex[j][i];
    a[dim][j] = 1;
  }
  for (std::size_t i = 0; i < dim; ++i) b[i] = beta[i];
  b[dim] = 1;
  LinearSolve sol = rat_solve(std::move(a), std::move(b));
  if (!sol.consistent) return std::nullopt;
  return sol.solution;  // unique since columns affinely independent
}

std::vector<Rational> barycentric(const Exponent& beta, const std::vector<Exponent>& simplex) {
  auto lam = barycentric_unclamped(beta, simplex);
  if (!lam)
    throw NotInSimplex(exponent_to_string(beta) + " lies outside the affine hull of the simplex");
  for (const auto& l : *lam)
    if (l < 0)
      throw NotInSimplex(exponent_to_string(beta) + " lies outside the simplex");
  return *lam;
}

STForm st_form(const Polynomial& f) {
  SupportAnalysis a = analyze_support(f);
  if (!a.clubsuit_ok)
    throw ClubsuitViolated("necessary conditions fail: a hull vertex is odd or has a nonpositive coefficient");
  if (affine_rank(a.vertices) != static_cast<int>(a.vertices.size()))
    throw NotSimplex("vertex set of the Newton polytope is not a simplex (" +
                     std::to_string(a.vertices.size()) + " vertices, affine rank deficient)");
  if (static_cast<int>(a.vertices.size()) > f.n() + 1)
    throw NotSimplex("vertex set of the Newton polytope is not a simplex (" +
                     std::to_string(a.vertices.size()) + " vertices in " + std::to_string(f.n()) +
                     " variables)");
  STForm st;
  st.n = f.n();
  st.simplex_vertices = a.vertices;
  for (const auto& v : a.vertices) st.vertex_coeffs.push_back(f.coeff(v));
  for (const auto& b : a.delta_a) {
    STForm::Tail t;
    t.beta = b;
    t.coeff = f.coeff(b);
    t.lambda = barycentric(b, st.simplex_vertices);
    for (std::size_t j = 0; j < t.lambda.size(); ++j)
      if (t.lambda[j] != 0) t.nz.push_back(static_cast<int>(j));
    t.monomial_square = is_monomial_square(Term{t.coeff, b});
    st.tails.push_back(std::move(t));
  }
  return st;
}

Rational simplex_volume_factorial(const std::vector<Exponent>& simplex) {
  if (simplex.size() < 2) return Rational(simplex.empty() ? 0 : 1);
  std::size_t d = simplex.size() - 1;
  RatMat m(d, RatVec(d, Rational(0)));
  if (simplex[0].size() != d) {
    // lower-dimensional simplex embedded in higher space: use Gram determinant
    RatMat diff(d, RatVec(simplex[0].size(), Rational(0)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < simplex[0].size(); ++j)
        diff[i][j] = Rational(simplex[i + 1][j] - simplex[0][j]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rational s(0);
        for (std::size_t k = 0; k < simplex[0].size(); ++k) s += diff[i][k] * diff[j][k];
        m[i][j] = s;
      }
    // det of Gram = (d! vol)^2; caller only compares nonzero-ness in this case
  } else {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] = Rational(simplex[i + 1][j] - simplex[0][j]);
  }
  // Fraction-free-ish Gaussian determinant.
  Rational det(1);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det < 0 ? -det : det;
}

namespace {

// Signed orientation of point q against the hyperplane through facet f
// (n points in n-space): det[f1-f0, ..., q-f0].
Rational orient(const std::vector<Exponent>& pts, const std::vector<int>& facet, const Exponent& q) {
  std::size_t d = q.size();
  RatMat m(d, RatVec(d, Rational(0)));
  for (std::size_t i = 0; i + 1 < facet.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = Rational(pts[facet[i + 1]][j] - pts[facet[0]][j]);
  for (std::size_t j = 0; j < d; ++j)
    m[d - 1][j] = Rational(q[j] - pts[facet[0]][j]);
  Rational det(1);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<Rational> simplex_barycentric_of(const std::vector<Exponent>& pts,
                                             const std::vector<int>& simplex, const Exponent& q) {
  std::vector<Exponent> verts;
  for (int i : simplex) verts.push_back(pts[i]);
  auto lam = barycentric_unclamped(q, verts);
  if (!lam) return {};
  return *lam;
}

}  // namespace

Triangulation triangulate_squares(const std::vector<Exponent>& points) {
  if (points.empty()) throw InvalidInput("triangulate_squares: empty point list");
  std::size_t n = points[0].size();
  Triangulation tri;
  tri.points = dedupe_sorted(points);
  if (affine_rank(tri.points) != static_cast<int>(n) + 1)
    throw DegenerateSupport("affine span of the monomial-square exponents is not full-dimensional");

  // Seed simplex: first n+1 affinely independent points in graded-lex order.
  std::vector<int> seed;
  std::vector<Exponent> seed_pts;
  std::vector<bool> used(tri.points.size(), false);
  for (std::size_t i = 0; i < tri.points.size() && seed.size() < n + 1; ++i) {
    seed_pts.push_back(tri.points[i]);
    if (affine_rank(seed_pts) == static_cast<int>(seed_pts.size())) {
      seed.push_back(static_cast<int>(i));
      used[i] = true;
    } else {
      seed_pts.pop_back();
    }
  }
  tri.simplices.push_back(seed);

  auto insert_point = [&](int pi) {
    const Exponent& p = tri.points[pi];
    // Inside (or on a face of) the current complex: stellar split.
    std::vector<std::pair<std::size_t, std::vector<Rational>>> containing;
    for (std::size_t s = 0; s < tri.simplices.size(); ++s) {
      auto lam = simplex_barycentric_of(tri.points, tri.simplices[s], p);
      if (lam.empty()) continue;
      bool inside = true;
      for (const auto& l : lam)
        if (l < 0) inside = false;
      if (inside) containing.emplace_back(s, lam);
    }
    if (!containing.empty()) {
      std::vector<std::vector<int>> fresh;
      std::set<std::size_t> dead;
      for (const auto& [s, lam] : containing) {
        dead.insert(s);
        const auto& simplex = tri.simplices[s];
        for (std::size_t j = 0; j < lam.size(); ++j) {
          if (lam[j] == 0) continue;  // facets through p stay intact
          std::vector<int> cell;
          for (std::size_t k = 0; k < simplex.size(); ++k)
            if (k != j) cell.push_back(simplex[k]);
          cell.push_back(pi);
          std::sort(cell.begin(), cell.end());
          fresh.push_back(std::move(cell));
        }
      }
      std::vector<std::vector<int>> kept;
      for (std::size_t s = 0; s < tri.simplices.size(); ++s)
        if (!dead.count(s)) kept.push_back(tri.simplices[s]);
      kept.insert(kept.end(), fresh.begin(), fresh.end());
      tri.simplices = std::move(kept);
      return;
    }
    // Outside: cone onto strictly visible boundary facets.
    std::map<std::vector<int>, std::vector<std::pair<std::size_t, int>>> facet_owners;
    for (std::size_t s = 0; s < tri.simplices.size(); ++s) {
      const auto& simplex = tri.simplices[s];
      for (std::size_t j = 0; j < simplex.size(); ++j) {
        std::vector<int> facet;
        for (std::size_t k = 0; k < simplex.size(); ++k)
          if (k != j) facet.push_back(simplex[k]);
        std::sort(facet.begin(), facet.end());
        facet_owners[facet].emplace_back(s, simplex[j]);
      }
    }
    bool coned = false;
    for (const auto& [facet, owners] : facet_owners) {
      if (owners.size() != 1) continue;  // interior facet
      const Exponent& opposite = tri.points[owners[0].second];
      Rational side_p = orient(tri.points, facet, p);
      Rational side_in = orient(tri.points, facet, opposite);
      if (side_p == 0 || side_in == 0) continue;
      if ((side_p > 0) == (side_in > 0)) continue;  // not visible
      std::vector<int> cell = facet;
      cell.push_back(pi);
      std::sort(cell.begin(), cell.end());
      tri.simplices.push_back(std::move(cell));
      coned = true;
    }
    if (!coned)
      throw DegenerateSupport("placing triangulation: no visible facet for " +
                              exponent_to_string(p));
  };

  for (std::size_t i = 0; i < tri.points.size(); ++i)
    if (!used[i]) insert_point(static_cast<int>(i));
  // Deterministic output order.
  std::sort(tri.simplices.begin(), tri.simplices.end());
  return tri;
}

}  // namespace sonc
