#include "pseq/errors.hpp"
#include "pseq/extrapolation.hpp"
#include "pseq/series_bounds.hpp"

#include <doctest.h>

#include <cmath>

using namespace pseq;

namespace {

const double kE = std::exp(1.0);

OperatorHandle negation() {
  OperatorHandle T;
  T.name = "negation";
  T.apply = [](const StepFunction& f) { return -1.0 * f; };
  return T;
}

OperatorHandle square() {
  OperatorHandle T;
  T.name = "square";
  T.apply = [](const StepFunction& f) { return f.map([](double v) { return v * v; }); };
  return T;
}

}  // namespace

TEST_CASE("small-measure constants in closed form") {
  // phi = 1 gives e sum e^{-n}; sqrt gives e sum e^{-n/2}.
  CHECK(small_measure_constant(Gauge::power({0, 1})) == doctest::Approx(kE * kE / (kE - 1)).epsilon(1e-12));
  double a = kE / (1 - std::exp(-0.5));
  CHECK(small_measure_constant(Gauge::power({1, 2})) == doctest::Approx(a).epsilon(1e-12));
  CHECK(a == doctest::Approx(6.908497).epsilon(1e-6));
  double A = 4 * a + 8 * kE * kE * kE * std::sqrt(2.0);
  CHECK(constant_A_phi(Gauge::power({1, 2})) == doctest::Approx(A).epsilon(1e-12));
  CHECK(A == doctest::Approx(254.9).epsilon(0.1 / 254.9));
  CHECK_THROWS_AS(small_measure_constant(Gauge::power({3, 4})), Error);
}

TEST_CASE("square-root domination") {
  auto s = sqrt_domination(Gauge::power({1, 2}));
  CHECK(s.ok);
  CHECK(s.c == doctest::Approx(1.0));
  CHECK(sqrt_domination(Gauge::log_power({1, 1})).ok);
  CHECK_FALSE(sqrt_domination(Gauge::power({3, 4})).ok);
}

TEST_CASE("random step functions respect their limits") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 300; ++t) {
    StepFunction f = random_step_function(rng, 64, 1000);
    CHECK(f.pieces() >= 1);
    CHECK(f.pieces() <= 64);
    CHECK(f.breaks().front() == 0.0);
    CHECK(f.breaks().back() == 1.0);
    for (double b : f.breaks()) CHECK(std::ldexp(b, 20) == std::floor(std::ldexp(b, 20)));
    CHECK(f.sup_abs() <= 1000.0);
  }
}

TEST_CASE("operator audits") {
  std::mt19937_64 rng(72);
  for (const auto& T : {OperatorHandle::identity(), OperatorHandle::dyadic_average(10)}) {
    auto audit = audit_operator(T, rng, 32);
    CHECK(audit.samples == 32);
    CHECK(audit.positive);
    CHECK(audit.sublinear);
  }
  CHECK_FALSE(audit_operator(negation(), rng, 16).positive);
  CHECK_FALSE(audit_operator(square(), rng, 16).sublinear);
}

TEST_CASE("dyadic averaging is a conditional expectation") {
  std::mt19937_64 rng(73);
  auto T = OperatorHandle::dyadic_average(6);
  for (int t = 0; t < 100; ++t) {
    StepFunction f = random_step_function(rng);
    StepFunction g = T(f);
    CHECK(g.integral() == doctest::Approx(f.integral()).epsilon(1e-9));
    CHECK(g.sup_abs() <= f.sup_abs() * (1 + 1e-12));
    for (double b : g.breaks()) CHECK(std::ldexp(b, 6) == std::floor(std::ldexp(b, 6)));
    for (double p : {1.0, 1.5, 2.0}) CHECK(leq_with_slack(g.lp_norm(p), f.lp_norm(p)));
  }
}

TEST_CASE("hypothesis rows") {
  Gauge phi = Gauge::power({1, 2});
  auto grid = p_grid(20);
  std::mt19937_64 rng(74);
  StepFunction f = random_step_function(rng);
  auto id = check_hypothesis(OperatorHandle::identity(), f, phi, grid);
  REQUIRE(id.rows.size() == grid.size());
  CHECK(id.all_pass());
  for (const auto& row : id.rows) {
    CHECK(row.lhs == doctest::Approx(f.lp_norm(row.p)));
    CHECK(row.rhs == doctest::Approx(std::exp(0.5 / (row.p - 1)) * f.lp_norm(row.p)));
  }
  CHECK_FALSE(check_hypothesis(OperatorHandle::scaled_identity(2.0), f, phi, grid).all_pass());
}

TEST_CASE("slack comparison") {
  CHECK(leq_with_slack(1.0, 1.0));
  CHECK(leq_with_slack(1.0 + 1e-13, 1.0));
  CHECK_FALSE(leq_with_slack(1.0 + 1e-9, 1.0));
  CHECK(leq_with_slack(0.0, 0.0));
}

TEST_CASE("decomposition trace on random inputs") {
  Gauge phi = Gauge::power({1, 2});
  std::mt19937_64 rng(75);
  for (int t = 0; t < 25; ++t) {
    StepFunction f = random_step_function(rng);
    for (const auto& T : {OperatorHandle::identity(), OperatorHandle::dyadic_average()}) {
      auto tr = trace_conclusion(T, f, phi);
      CAPTURE(T.name);
      CHECK(tr.pass());
      CHECK_FALSE(tr.first_failure().has_value());
      CHECK(tr.A_phi == doctest::Approx(constant_A_phi(phi)));
      CHECK(tr.a_phi == doctest::Approx(small_measure_constant(phi)));
      for (const auto& v : tr.g_plus.values()) CHECK(v >= 0.0);
      for (const auto& v : tr.g_minus.values()) CHECK(v >= 0.0);
      CHECK(tr.step("conclusion").pass);
      CHECK(tr.step("split").pass);
      double total = 0;
      for (double m : tr.level_measure_plus) total += m;
      CHECK(total <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("level sets of a two-valued function") {
  Gauge phi = Gauge::power({1, 2});
  StepFunction f = StepFunction::indicator(0.0, 0.25, 3.0) - StepFunction::indicator(0.5, 0.75, 5.0);
  auto tr = trace_conclusion(OperatorHandle::identity(), f, phi);
  CHECK(tr.pass());
  REQUIRE(tr.level_measure_plus.size() == 1);
  CHECK(tr.level_measure_plus[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(tr.step("no-such-step"), Error);
}
