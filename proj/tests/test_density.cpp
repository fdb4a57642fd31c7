#include "pseq/density.hpp"
#include "pseq/errors.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace pseq;

namespace {

LatticeFunction random_periodic(std::mt19937_64& rng) {
  std::uint64_t period = 1 + rng() % 40;
  std::vector<LatticeFunction::Entry> entries;
  for (std::uint64_t r = 0; r < period; ++r)
    if (rng() % 3 == 0) entries.emplace_back(BigInt(r), Real(static_cast<double>(rng() % 1000) / 8.0));
  return LatticeFunction::periodic(BigInt(period), entries);
}

Real brute_window(const LatticeFunction& f, std::int64_t N) {
  Real total = 0;
  for (std::int64_t n = -N; n <= N; ++n) total += abs(f(BigInt(n)));
  return total / (2 * N + 1);
}

}  // namespace

TEST_CASE("exact density is the period mean") {
  std::mt19937_64 rng(51);
  PrecisionScope scope(kBaseBits);
  for (int t = 0; t < 200; ++t) {
    auto f = random_periodic(rng);
    std::int64_t period = f.period().convert_to<std::int64_t>();
    Real mean = 0;
    for (std::int64_t r = 0; r < period; ++r) mean += f(BigInt(r));
    mean /= period;
    CHECK(abs(exact_density(f) - mean) < Real("1e-60"));
  }
}

TEST_CASE("finite windows match a direct sum and respect the truncation bound") {
  std::mt19937_64 rng(52);
  PrecisionScope scope(kBaseBits);
  for (int t = 0; t < 100; ++t) {
    auto f = random_periodic(rng);
    std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 300);
    Real fd = finite_density(f, BigInt(N));
    CHECK(abs(fd - brute_window(f, N)) < Real("1e-50"));
    CHECK(abs(fd - exact_density(f)) <= truncation_bound(f, BigInt(N)));
  }
}

TEST_CASE("finitely supported functions") {
  auto f = LatticeFunction::finite({{BigInt(-3), Real(2)}, {BigInt(5), Real(4)}, {BigInt(100), Real(7)}});
  PrecisionScope scope(kBaseBits);
  CHECK(to_double(finite_density(f, BigInt(10))) == doctest::Approx(6.0 / 21.0));
  CHECK(to_double(finite_density(f, BigInt(2))) == 0.0);
  CHECK_THROWS_AS(finite_density(f, BigInt(0)), Error);
  CHECK_THROWS_AS(exact_density(f), Error);
}

TEST_CASE("witness densities") {
  Schedule a{ScheduleSpec{}};
  ScheduleSpec bs;
  bs.variant = Variant::TheoremB;
  bs.phi = Gauge::log_power({1, 1});
  Schedule b{bs};
  ScheduleSpec ls;
  ls.variant = Variant::Lemma14;
  ls.phi = Gauge::log_power({1, 1});
  ls.psi = Gauge::log_power({1, 3});
  Schedule l{ls};

  PrecisionScope scope(kBaseBits);
  for (std::uint64_t u : {1u, 2u, 3u}) {
    // Phi(F_u) equals M(u) on multiples of M(u).
    CHECK(witness_density(a, u) == 1);
    CHECK(witness_density(b, u) == 1);
    Real d = witness_density(l, u);
    CHECK(d >= 1);
    CHECK(d <= 1 + Real(1) / to_real(l.M(u)));
  }
  LatticeFunction w = a.witness(1);
  Real fd = finite_density(w.transformed([&](const Real& v) { return a.witness_functional().apply(v); }), BigInt(1000));
  CHECK(abs(fd - 1) < Real("1e-3"));
}

TEST_CASE("shift set density endpoints") {
  WitnessProfile prof;
  prof.u = 1;
  prof.modulus = 4;
  prof.best = {Real(1), Real(2), Real(3), Real(4)};
  prof.best_k = {0, 0, 0, 0};
  PrecisionScope scope(kBaseBits);
  CHECK(density_of_shift_set(prof, Real(0)) == 1);
  CHECK(density_of_shift_set(prof, Real(3)) == Real(1) / 2);
  CHECK(density_of_shift_set(prof, Real(5)) == 0);
  CHECK(density_of_shift_set(prof, Real(std::numeric_limits<double>::infinity())) == 0);
}
