#include "sonc/exact_linalg.hpp"

#include <cassert>
#include <cstddef>

namespace sonc {

int rat_rank(RatMat a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational factor = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

LinearSolve rat_solve(RatMat a, RatVec b) {
  LinearSolve out;
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  assert(b.size() == rows);
  std::vector<int> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational factor = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
      b[i] -= factor * b[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return out;  // inconsistent
  out.consistent = true;
  out.unique = pivot_col_of_row.size() == cols;
  if (out.unique) {
    out.solution.assign(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      out.solution[pivot_col_of_row[i]] = b[i] / a[i][pivot_col_of_row[i]];
  }
  return out;
}

bool lp_feasible_eq(RatMat a, RatVec b) {
  std::size_t m = a.size();
  if (m == 0) return true;
  std::size_t n = a[0].size();
  // Normalize to b >= 0, append artificial identity, minimize sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }
  }
  std::size_t total = n + m;
  // Tableau rows: [A | I | b]; objective row = -sum of constraint rows over artificials.
  RatMat t(m, RatVec(total + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
  }
  RatVec obj(total + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= total; ++j) obj[j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) obj[n + i] = 0;  // artificials basic with zero reduced cost
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    // Bland: smallest index with negative reduced cost.
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;
    // Ratio test, Bland tie-break on basis index.
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][total] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase 1
    Rational piv = t[leave][enter];
    for (std::size_t j = 0; j <= total; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rational f = obj[enter];
      for (std::size_t j = 0; j <= total; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  // Feasible iff every artificial carries zero value.
  Rational artificial_mass(0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) artificial_mass += t[i][total];
  return artificial_mass == 0;
}

}  // namespace sonc
