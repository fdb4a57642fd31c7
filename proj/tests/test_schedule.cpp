#include "pseq/errors.hpp"
#include "pseq/schedule.hpp"

#include <doctest.h>

#include <cmath>

using namespace pseq;

namespace {

Schedule theorem_a() { return Schedule(ScheduleSpec{}); }

Schedule theorem_b() {
  ScheduleSpec s;
  s.variant = Variant::TheoremB;
  s.phi = Gauge::log_power({1, 1});
  return Schedule(s);
}

Schedule lemma() {
  ScheduleSpec s;
  s.variant = Variant::Lemma14;
  s.phi = Gauge::log_power({1, 1});
  s.psi = Gauge::log_power({1, 3});
  s.k = 1;
  return Schedule(s);
}

}  // namespace

TEST_CASE("square-root gauge with q = 2") {
  Schedule s = theorem_a();
  // phi^{-1}(u^3) = u^6, so M(u) = u^9 and R(u) = u^{1/2} / u^6.
  for (std::uint64_t u = 1; u <= 6; ++u) {
    BigInt u9 = 1;
    for (int i = 0; i < 9; ++i) u9 *= u;
    CHECK(s.M(u) == u9);
    PrecisionScope scope(kBaseBits);
    CHECK(to_double(s.R(u)) == doctest::Approx(std::sqrt(double(u)) / std::pow(double(u), 6)).epsilon(1e-14));
    CHECK(to_double(s.witness_value(u)) == doctest::Approx(std::pow(double(u), 6)));
  }
  CHECK(s.M(2) == 512);
  CHECK(s.M(3) == 19683);
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(s.R(2)) == doctest::Approx(std::sqrt(2.0) / 64));
  CHECK(to_double(s.sweep_bound(1)) == doctest::Approx(0.25));
  CHECK(to_double(s.sweep_bound(2)) == doctest::Approx(std::sqrt(2.0) / 4));
  CHECK_THROWS_AS(s.g(1), Error);
}

TEST_CASE("base-two logarithm gauge") {
  Schedule s = theorem_b();
  // phi^{-1}(u^4) = 2^{u^4}.
  CHECK(s.M(1) == 2);
  CHECK(s.M(2) == pow2(16));
  CHECK(s.M(3) == pow2(81));
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(s.g(2)) == doctest::Approx(16.0));
  CHECK(to_double(s.R(2)) == doctest::Approx(std::sqrt(2.0) / 65536.0));
  CHECK(to_double(s.witness_value(3)) == doctest::Approx(std::ldexp(1.0, 81)));
}

TEST_CASE("two-gauge schedule") {
  Schedule s = lemma();
  // g = u^2; M = floor(2^g * g^{1/3}) with psi flat on [1, 2].
  CHECK(s.M(1) == 2);
  CHECK(s.M(2) == static_cast<long>(std::floor(16 * std::cbrt(4.0))));
  CHECK(s.M(3) == static_cast<long>(std::floor(512 * std::cbrt(9.0))));
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(s.R(2)) == doctest::Approx(std::sqrt(2.0 / std::cbrt(4.0)) / 16.0));
}

TEST_CASE("blocks partition the nonnegative integers") {
  for (const Schedule& s : {theorem_a(), lemma()}) {
    BigInt expect = 0;
    for (std::uint64_t u = 1; u <= 4; ++u) {
      BlockIndex b = s.block(u);
      CHECK(b.u == u);
      CHECK(b.start == expect);
      CHECK(b.length == s.M(u));
      CHECK(s.block_of(b.start).u == u);
      CHECK(s.block_of(b.end() - 1).u == u);
      CHECK(b.contains(b.start));
      CHECK_FALSE(b.contains(b.end()));
      expect = b.end();
    }
  }
  Schedule a = theorem_a();
  CHECK(a.block(1).start == 0);
  CHECK(a.block(1).end() == 1);
  CHECK(a.block_of(BigInt(1)).u == 2);
  CHECK(a.block_of(BigInt(513)).u == 3);
  CHECK_THROWS_AS(a.block(0), Error);
  CHECK_THROWS_AS(a.block_of(BigInt(-1)), Error);
}

TEST_CASE("R is below one and decreasing") {
  for (const Schedule& s : {theorem_a(), theorem_b(), lemma()}) {
    PrecisionScope scope(kBaseBits);
    Real prev = 2;
    for (std::uint64_t u = 1; u <= 3; ++u) {
      Real r = s.R(u);
      CHECK(r > 0);
      CHECK(r <= 1);
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("witness is periodic with a single residue") {
  Schedule s = theorem_a();
  LatticeFunction f = s.witness(2);
  CHECK(f.is_periodic());
  CHECK(f.period() == 512);
  CHECK(f.entries().size() == 1);
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(f(BigInt(1024))) == doctest::Approx(64.0));
  CHECK(to_double(f(BigInt(1025))) == 0.0);
}

TEST_CASE("caps and invalid specs") {
  ScheduleSpec s;
  s.variant = Variant::TheoremB;
  s.phi = Gauge::log_power({1, 1});
  Schedule capped(s, ScheduleCaps{64, 64});
  CHECK_THROWS_AS(capped.M(3), Error);
  Schedule few(ScheduleSpec{}, ScheduleCaps{128, 2});
  CHECK_THROWS_AS(few.block(3), Error);

  ScheduleSpec flat;
  flat.phi = Gauge::power({0, 1});
  CHECK_THROWS_AS(Schedule{flat}, Error);
  ScheduleSpec bad_q;
  bad_q.q = {1, 1};
  CHECK_THROWS_AS(Schedule{bad_q}, Error);
  ScheduleSpec no_psi;
  no_psi.variant = Variant::Lemma14;
  CHECK_THROWS_AS(Schedule{no_psi}, Error);

  CHECK(parse_variant("theorem-b") == Variant::TheoremB);
  CHECK(to_string(Variant::Lemma14) == "lemma-14");
  CHECK_THROWS_AS(parse_variant("theorem-c"), Error);
}
