#include "pseq/errors.hpp"
#include "pseq/step_function.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace pseq;

namespace {

StepFunction random_step(std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> breaks{0.0, 1.0};
  while (static_cast<int>(breaks.size()) < pieces + 1) {
    double b = std::ldexp(std::floor(std::ldexp(unit(rng), 16)), -16);
    if (std::find(breaks.begin(), breaks.end(), b) == breaks.end()) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> values;
  for (int i = 0; i < pieces; ++i) values.push_back(std::ldexp(std::floor(std::ldexp(unit(rng) - 0.5, 20)), -16));
  return StepFunction(breaks, values);
}

}  // namespace

TEST_CASE("basic pieces") {
  StepFunction f({0.0, 0.25, 1.0}, {2.0, -1.0});
  CHECK(f.pieces() == 2);
  CHECK(f(0.1) == 2.0);
  CHECK(f(0.25) == -1.0);
  CHECK(f.integral() == doctest::Approx(0.5 - 0.75));
  CHECK(f.sup_abs() == 2.0);
  CHECK(f.lp_norm(2.0) == doctest::Approx(std::sqrt(0.25 * 4 + 0.75)));
  CHECK(f.measure_where([](double v) { return v < 0; }) == doctest::Approx(0.75));
  CHECK(StepFunction().integral() == 0.0);
  CHECK(StepFunction::constant(3.0).integral() == 3.0);
  CHECK(StepFunction::indicator(0.5, 0.75, 2.0).integral() == doctest::Approx(0.5));
}

TEST_CASE("malformed partitions are rejected") {
  CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(StepFunction({0.0, 0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(StepFunction({0.1, 1.0}, {1.0}), Error);
}

TEST_CASE("positive and negative parts decompose f") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    StepFunction f = random_step(rng, 1 + t % 12);
    StepFunction p = f.positive_part(), n = f.negative_part();
    for (double v : p.values()) CHECK(v >= 0.0);
    for (double v : n.values()) CHECK(v >= 0.0);
    CHECK((p - n).integral() == doctest::Approx(f.integral()));
    CHECK((p + n).integral() == doctest::Approx(f.abs().integral()));
    CHECK(f.abs().integral() == doctest::Approx(f.lp_norm(1.0)));
  }
}

TEST_CASE("norms are monotone in p and bounded by sup") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    StepFunction f = random_step(rng, 1 + t % 9);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      double np = f.lp_norm(p);
      CHECK(np >= prev * (1 - 1e-12));
      CHECK(np <= f.sup_abs() * (1 + 1e-12));
      prev = np;
    }
  }
}

TEST_CASE("combine works on the common refinement") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    StepFunction f = random_step(rng, 5), g = random_step(rng, 7);
    StepFunction h = f + g;
    for (int s = 0; s < 20; ++s) {
      double x = unit(rng);
      CHECK(h(x) == doctest::Approx(f(x) + g(x)));
    }
    CHECK(h.integral() == doctest::Approx(f.integral() + g.integral()));
    CHECK((2.0 * f).integral() == doctest::Approx(2.0 * f.integral()));
  }
}

TEST_CASE("simplified keeps the function") {
  StepFunction f({0.0, 0.25, 0.5, 1.0}, {1.0, 1.0, 2.0});
  StepFunction s = f.simplified();
  CHECK(s.pieces() == 2);
  CHECK(s(0.3) == 1.0);
  CHECK(s(0.7) == 2.0);
  CHECK(s.integral() == doctest::Approx(f.integral()));
}
