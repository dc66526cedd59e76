#pragma once

#include "sonc/polynomial.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sonc {

using Box = std::vector<std::pair<double, double>>;

struct SampleReport {
  double best_value = 0.0;
  std::vector<double> best_point;
  long samples = 0;
  Box box;
  bool constrained = false;
};

Box default_box(int n, double radius = 5.0);

/// Low-discrepancy (Halton) sweep plus Nelder-Mead polish from the best
/// seeds. Deterministic given the seed; an upper bound on the infimum only.
SampleReport sample_min(const Polynomial& f, const Box& box, int n_samples, std::uint64_t seed,
                        const std::vector<Polynomial>& constraints = {});

/// True iff no feasible sample evaluates below bound - 1e-6.
bool validate_bound(const Polynomial& f, const std::vector<Polynomial>& constraints, double bound,
                    const Box& box, int n_samples, std::uint64_t seed);

}  // namespace sonc
