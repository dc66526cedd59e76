#include "sonc/oracle.hpp"

#include "sonc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sonc {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

double feas_violation(const std::vector<Polynomial>& constraints, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& g : constraints) worst = std::max(worst, -g.evaluate(x));
  return worst;
}

// Standard Nelder-Mead with a large feasibility penalty; deterministic.
std::pair<std::vector<double>, double> nelder_mead(const Polynomial& f,
                                                   const std::vector<Polynomial>& constraints,
                                                   const Box& box, std::vector<double> start,
                                                   int iters) {
  const int n = static_cast<int>(start.size());
  auto clamp = [&](std::vector<double>& x) {
    for (int i = 0; i < n; ++i) x[i] = std::clamp(x[i], box[i].first, box[i].second);
  };
  auto value = [&](const std::vector<double>& x) {
    return f.evaluate(x) + 1e8 * feas_violation(constraints, x);
  };
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (int i = 0; i < n; ++i) {
    double h = 0.05 * (box[i].second - box[i].first);
    simplex[i + 1][i] += simplex[i + 1][i] + h > box[i].second ? -h : h;
  }
  std::vector<double> vals(n + 1);
  for (int i = 0; i <= n; ++i) vals[i] = value(simplex[i]);
  for (int it = 0; it < iters; ++it) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> v2;
    for (int i = 0; i <= n; ++i) {
      s2.push_back(simplex[order[i]]);
      v2.push_back(vals[order[i]]);
    }
    simplex = std::move(s2);
    vals = std::move(v2);
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
    auto mix = [&](double t) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = centroid[j] + t * (centroid[j] - simplex[n][j]);
      clamp(x);
      return x;
    };
    std::vector<double> xr = mix(1.0);
    double fr = value(xr);
    if (fr < vals[0]) {
      std::vector<double> xe = mix(2.0);
      double fe = value(xe);
      if (fe < fr) {
        simplex[n] = xe;
        vals[n] = fe;
      } else {
        simplex[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      simplex[n] = xr;
      vals[n] = fr;
    } else {
      std::vector<double> xc = mix(0.5);
      double fc = value(xc);
      if (fc < vals[n]) {
        simplex[n] = xc;
        vals[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          vals[i] = value(simplex[i]);
        }
      }
    }
    double spread = 0.0;
    for (int i = 1; i <= n; ++i) spread = std::max(spread, std::abs(vals[i] - vals[0]));
    if (spread < 1e-14) break;
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  return {simplex[best], vals[best]};
}

}  // namespace

Box default_box(int n, double radius) {
  return Box(static_cast<std::size_t>(n), {-radius, radius});
}

SampleReport sample_min(const Polynomial& f, const Box& box, int n_samples, std::uint64_t seed,
                        const std::vector<Polynomial>& constraints) {
  const int n = f.n();
  if (static_cast<int>(box.size()) != n) throw DimensionMismatch("box size does not match n");
  SampleReport rep;
  rep.box = box;
  rep.constrained = !constraints.empty();
  rep.best_value = std::numeric_limits<double>::infinity();
  long offset = static_cast<long>(seed % 9973) + 1;

  struct Seen {
    double val;
    std::vector<double> x;
  };
  std::vector<Seen> best_seeds;
  auto consider_seed = [&](double v, const std::vector<double>& x) {
    best_seeds.push_back({v, x});
    std::sort(best_seeds.begin(), best_seeds.end(),
              [](const Seen& a, const Seen& b) { return a.val < b.val; });
    if (best_seeds.size() > 10) best_seeds.pop_back();
  };

  std::vector<double> x(n);
  for (long i = 0; i < n_samples; ++i) {
    for (int d = 0; d < n; ++d) {
      double u = halton(offset + i, kPrimes[d % 12]);
      x[d] = box[d].first + u * (box[d].second - box[d].first);
    }
    ++rep.samples;
    if (feas_violation(constraints, x) > 1e-9) continue;
    double v = f.evaluate(x);
    consider_seed(v, x);
    if (v < rep.best_value) {
      rep.best_value = v;
      rep.best_point = x;
    }
  }
  for (const auto& sd : best_seeds) {
    auto [px, pv] = nelder_mead(f, constraints, box, sd.x, 250);
    if (feas_violation(constraints, px) > 1e-8) continue;
    double v = f.evaluate(px);
    if (v < rep.best_value) {
      rep.best_value = v;
      rep.best_point = px;
    }
  }
  if (rep.best_point.empty()) {
    rep.best_value = std::numeric_limits<double>::infinity();  // nothing feasible found
  }
  return rep;
}

bool validate_bound(const Polynomial& f, const std::vector<Polynomial>& constraints, double bound,
                    const Box& box, int n_samples, std::uint64_t seed) {
  if (bound == -std::numeric_limits<double>::infinity()) return true;
  SampleReport rep = sample_min(f, box, n_samples, seed, constraints);
  return rep.best_value >= bound - 1e-6;
}

}  // namespace sonc
