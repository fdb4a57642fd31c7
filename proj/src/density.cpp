#include "pseq/density.hpp"

#include "pseq/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace pseq {

Real exact_density(const LatticeFunction& f) {
  if (!f.is_periodic())
    throw Error(ErrorKind::InvalidArgument, "exact density needs a periodic function; use finite_density");
  Real total = 0;
  for (const auto& e : f.entries()) total += boost::multiprecision::abs(e.second);
  return total / to_real(f.period());
}

Real finite_density(const LatticeFunction& f, const BigInt& N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "finite density needs N >= 1");
  Real total = 0;
  if (f.is_periodic()) {
    for (const auto& [r, v] : f.entries())
      total += boost::multiprecision::abs(v) * to_real(count_congruent(-N, N + 1, r, f.period()));
  } else {
    for (const auto& [n, v] : f.entries())
      if (-N <= n && n <= N) total += boost::multiprecision::abs(v);
  }
  return total / to_real(BigInt(2 * N + 1));
}

Real truncation_bound(const LatticeFunction& f, const BigInt& N) {
  if (!f.is_periodic()) throw Error(ErrorKind::InvalidArgument, "truncation bound needs a periodic function");
  return to_real(f.period()) * f.sup() / to_real(BigInt(2 * N + 1));
}

Real witness_density(const Schedule& sched, std::uint64_t u) {
  YoungFunctional Phi = sched.witness_functional();
  return exact_density(sched.witness(u).transformed([&](const Real& x) { return Phi.apply(x); }));
}

Real density_of_shift_set(const WitnessProfile& profile, const Real& K) {
  if (profile.best.empty()) throw Error(ErrorKind::InvalidArgument, "empty witness profile");
  if (boost::multiprecision::isinf(K)) return K > 0 ? Real(0) : Real(1);
  std::size_t hits = 0;
  for (const Real& b : profile.best)
    if (b >= K) ++hits;
  return Real(hits) / Real(profile.best.size());
}

Real density_of_shift_set(const PerturbedSequence& p, std::uint64_t u, const Real& K) {
  return density_of_shift_set(witness_profile(p, u), K);
}

}  // namespace pseq
