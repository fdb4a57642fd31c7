#include "pseq/averages.hpp"
#include "pseq/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pseq;

namespace {

LatticeFunction random_periodic(std::mt19937_64& rng) {
  std::uint64_t period = 1 + rng() % 30;
  std::vector<LatticeFunction::Entry> entries;
  for (std::uint64_t r = 0; r < period; ++r)
    if (rng() % 2 == 0) entries.emplace_back(BigInt(r), Real(static_cast<double>(rng() % 100)));
  return LatticeFunction::periodic(BigInt(period), entries);
}

Real brute_average(const IntegerSet& seq, const LatticeFunction& f, const BigInt& x, const BigInt& N,
                   const IntegerSet& norm) {
  Real total = 0;
  for (const auto& m : seq.elements_in(BigInt(1), N)) total += f(x + m);
  return total / to_real(BigInt(norm.elements_in(BigInt(1), N).size()));
}

std::shared_ptr<const Schedule> schedule_lemma() {
  ScheduleSpec s;
  s.variant = Variant::Lemma14;
  s.phi = Gauge::log_power({1, 1});
  s.psi = Gauge::log_power({1, 3});
  return std::make_shared<Schedule>(s);
}

std::shared_ptr<const Schedule> schedule_b() {
  ScheduleSpec s;
  s.variant = Variant::TheoremB;
  s.phi = Gauge::log_power({1, 1});
  return std::make_shared<Schedule>(s);
}

}  // namespace

TEST_CASE("shift averages match enumeration") {
  std::mt19937_64 rng(61);
  auto sq = make_squares();
  auto sb = make_synthetic_block();
  PrecisionScope scope(kBaseBits);
  for (int t = 0; t < 150; ++t) {
    auto f = random_periodic(rng);
    BigInt x = BigInt(rng() % 1000) - 500;
    BigInt N = 2 + rng() % 5000;
    CHECK(abs(average_along(*sq, f, x, N) - brute_average(*sq, f, x, N, *sq)) < Real("1e-50"));
    if (N > 2) CHECK(abs(average_along(*sb, f, x, N) - brute_average(*sb, f, x, N, *sb)) < Real("1e-50"));
  }
  auto g = LatticeFunction::finite({{BigInt(5), Real(3)}, {BigInt(10), Real(1)}});
  CHECK(to_double(average_along(*sq, g, BigInt(1), BigInt(20))) == doctest::Approx(4.0 / 4.0));
  CHECK(to_double(average_along(*sq, g, BigInt(6), BigInt(20))) == doctest::Approx(0.25));
}

TEST_CASE("constant one averages to one") {
  auto one = LatticeFunction::constant(Real(1));
  auto sq = make_squares();
  PrecisionScope scope(kBaseBits);
  for (long N : {2L, 17L, 1000000L}) CHECK(average_along(*sq, one, BigInt(0), BigInt(N)) == 1);
  CHECK(average_along(*sq, one, BigInt(0), pow2(400)) == 1);
  CHECK_THROWS_AS(average_along(*sq, one, BigInt(0), BigInt(1)), Error);
  CHECK_THROWS_AS(average_along(*sq, one, BigInt(0), BigInt(0)), Error);
}

TEST_CASE("normalizing by another set") {
  auto plan = build_plan(make_squares(), schedule_lemma(), 2);
  PerturbedSequence delta(plan);
  auto one = LatticeFunction::constant(Real(1));
  PrecisionScope scope(kBaseBits);
  BigInt N = plan.horizon();
  Real ratio = average_along(delta, one, BigInt(0), N, plan.base.get());
  CHECK(ratio == to_real(delta.count(N)) / to_real(plan.base->count(N)));
  CHECK(ratio >= 1);
}

TEST_CASE("max average dominates each cutoff") {
  std::mt19937_64 rng(62);
  auto sq = make_squares();
  PrecisionScope scope(kBaseBits);
  for (int t = 0; t < 50; ++t) {
    auto f = random_periodic(rng);
    std::vector<BigInt> lambda;
    for (int i = 0; i < 5; ++i) lambda.push_back(2 + rng() % 3000);
    Real m = max_average(*sq, f, BigInt(3), lambda);
    bool hit = false;
    for (const auto& N : lambda) {
      Real a = average_along(*sq, f, BigInt(3), N);
      CHECK(a <= m);
      if (a == m) hit = true;
    }
    CHECK(hit);
  }
  CHECK_THROWS_AS(max_average(*sq, LatticeFunction::constant(Real(1)), BigInt(0), {}), Error);
}

TEST_CASE("rotation averages") {
  auto rot = DynamicalSystem::rotation();
  CHECK(rot.orbit_point(0.0, BigInt(1)) == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(rot.orbit_point(0.5, BigInt(2)) == doctest::Approx(std::fmod(0.5 + 2 * (std::sqrt(2.0) - 1), 1.0)));
  BigInt huge = pow2(200) + 7;
  double far = rot.orbit_point(0.0, huge);
  CHECK(far >= 0.0);
  CHECK(far < 1.0);
  CHECK_THROWS_AS(DynamicalSystem::shift().orbit_point(0.0, BigInt(1)), Error);

  auto nat = make_naturals();
  StepFunction half = StepFunction::indicator(0.0, 0.5);
  CHECK(average_along(*nat, rot, half, 0.0, BigInt(100000)) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(average_along(*nat, rot, StepFunction::constant(1.0), 0.3, BigInt(500)) == doctest::Approx(1.0));

  auto sq = make_squares();
  double brute = 0;
  std::int64_t count = 0;
  for (std::int64_t m = 1; m * m < 5000; ++m) {
    brute += half(rot.orbit_point(0.25, BigInt(m * m)));
    ++count;
  }
  CHECK(average_along(*sq, rot, half, 0.25, BigInt(5000)) == doctest::Approx(brute / count));
}

TEST_CASE("witness profile matches direct maximal averages") {
  struct Case {
    std::shared_ptr<const BaseSequence> base;
    std::shared_ptr<const Schedule> sched;
    std::uint64_t k_max;
  };
  for (const auto& c : {Case{make_squares(), schedule_lemma(), 2}, Case{make_synthetic_block(), schedule_b(), 1}}) {
    auto plan = build_plan(c.base, c.sched, c.k_max);
    PerturbedSequence p(plan);
    REQUIRE(smallest_size_condition_block(p, 1) == std::optional<std::uint64_t>(1));
    WitnessProfile prof = witness_profile(p, 1);
    LatticeFunction w = c.sched->witness(1);
    BlockIndex b = c.sched->block(1);
    std::vector<BigInt> lambda;
    for (BigInt k = b.start; k < b.end(); ++k) lambda.push_back(2 * plan.choices[k.convert_to<std::size_t>()].n);
    PrecisionScope scope(kBaseBits);
    REQUIRE(prof.best.size() == c.sched->M(1));
    for (std::size_t n = 0; n < prof.best.size(); ++n) {
      Real direct = max_average(p, w, BigInt(n), lambda);
      CAPTURE(n);
      CHECK(abs(prof.best[n] - direct) < Real("1e-40") * (1 + direct));
    }
    SweepoutResult s = summarize(prof);
    CHECK(s.shifts == prof.best.size());
    CHECK(s.pass == (s.achieved >= s.bound));
  }
}

TEST_CASE("witness profile preconditions") {
  auto plan = build_plan(make_squares(), std::make_shared<Schedule>(ScheduleSpec{}), 3);
  PerturbedSequence p(plan);
  try {
    witness_profile(p, 2);
    FAIL("block 2 is not covered");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolation);
  }
  auto r = sweepout_witness(p, 1);
  CHECK(r.pass);
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(r.bound) == doctest::Approx(0.25));
}
