#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sonc/oracle.hpp"

#include <cmath>

using namespace sonc;

TEST_CASE("sample_min: Motzkin zeros at (1,1) and (1,-1) are found") {
  SampleReport rep = sample_min(fixtures::motzkin(), default_box(2, 2.0), 4000, 0);
  CHECK(rep.best_value <= 1e-4);
  CHECK(rep.best_value >= -1e-9);  // Motzkin is nonnegative
  REQUIRE(rep.best_point.size() == 2);
  CHECK(std::abs(std::abs(rep.best_point[0]) - 1.0) < 0.05);
  CHECK(std::abs(std::abs(rep.best_point[1]) - 1.0) < 0.05);
}

TEST_CASE("sample_min: constant polynomial") {
  SampleReport rep = sample_min(Polynomial::parse("7/2", 2), default_box(2), 100, 0);
  CHECK(rep.best_value == doctest::Approx(3.5));
}

TEST_CASE("sample_min: constrained minimum of Exa-Constrained3 near (2,2,2)") {
  SampleReport rep = sample_min(fixtures::c3_f(), default_box(3, 3.0), 30000, 0,
                                {fixtures::c3_g()});
  CHECK(rep.constrained);
  CHECK(rep.best_value <= -14.5);
  CHECK(rep.best_value >= -15.0 - 1e-6);  // cannot beat the true constrained minimum
  CHECK(fixtures::c3_g().evaluate(rep.best_point) >= -1e-8);
}

TEST_CASE("sample_min: determinism per seed and monotonicity in the sample count") {
  SampleReport a = sample_min(fixtures::motzkin(), default_box(2, 2.0), 2000, 9);
  SampleReport b = sample_min(fixtures::motzkin(), default_box(2, 2.0), 2000, 9);
  CHECK(a.best_value == b.best_value);
  SampleReport more = sample_min(fixtures::motzkin(), default_box(2, 2.0), 6000, 9);
  CHECK(more.best_value <= a.best_value + 1e-15);
}

TEST_CASE("validate_bound") {
  CHECK(validate_bound(fixtures::motzkin(), {}, 0.0, default_box(2, 2.0), 4000, 0));
  CHECK_FALSE(validate_bound(fixtures::motzkin(), {}, 0.5, default_box(2, 2.0), 4000, 0));
  CHECK(validate_bound(fixtures::motzkin(), {}, -std::numeric_limits<double>::infinity(),
                       default_box(2, 2.0), 10, 0));
}
