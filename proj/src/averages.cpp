#include "pseq/averages.hpp"

#include "pseq/errors.hpp"

#include <algorithm>

namespace pseq {

DynamicalSystem DynamicalSystem::shift() { return DynamicalSystem(Kind::Shift); }
DynamicalSystem DynamicalSystem::rotation() { return DynamicalSystem(Kind::Rotation); }

double DynamicalSystem::orbit_point(double x, const BigInt& m) const {
  if (kind_ != Kind::Rotation) throw Error(ErrorKind::InvalidArgument, "orbit_point is defined for the rotation");
  PrecisionScope scope(bit_length(m) + 128);
  Real alpha = boost::multiprecision::sqrt(Real(2)) - 1;
  Real t = Real(x) + to_real(m) * alpha;
  t -= boost::multiprecision::floor(t);
  double out = to_double(t);
  return out >= 1.0 ? 0.0 : out;
}

namespace {

BigInt normalizer(const IntegerSet& seq, const IntegerSet* norm, const BigInt& N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "cutoff N must be >= 1");
  BigInt c = (norm ? *norm : seq).count(N);
  if (c == 0) throw Error(ErrorKind::EmptyPrefix, "no sequence elements below N = " + to_string(N));
  return c;
}

}  // namespace

Real average_along(const IntegerSet& seq, const LatticeFunction& f, const BigInt& x, const BigInt& N,
                   const IntegerSet* norm) {
  BigInt c = normalizer(seq, norm, N);
  PrecisionScope scope(kBaseBits);
  Real total = 0;
  if (f.is_periodic()) {
    for (const auto& [r, v] : f.entries())
      if (v != 0) total += v * to_real(seq.count_in_residue(1, N, mod_floor(r - x, f.period()), f.period()));
  } else {
    for (const auto& [p, v] : f.entries()) {
      BigInt m = p - x;
      if (v != 0 && m >= 1 && m < N && seq.contains(m)) total += v;
    }
  }
  return total / to_real(c);
}

double average_along(const IntegerSet& seq, const DynamicalSystem& sys, const StepFunction& f, double x,
                     const BigInt& N, const IntegerSet* norm) {
  BigInt c = normalizer(seq, norm, N);
  if (sys.kind() != DynamicalSystem::Kind::Rotation)
    throw Error(ErrorKind::InvalidArgument, "step functions live on the rotation system");
  double total = 0;
  std::size_t visited = 0;
  seq.for_each_in(1, N, [&](const BigInt& m) {
    if (++visited > kDefaultEnumerationLimit)
      throw Error(ErrorKind::ResourceLimit, "rotation average would visit more than the enumeration limit");
    total += f(sys.orbit_point(x, m));
    return true;
  });
  return total / to_double(c);
}

Real max_average(const IntegerSet& seq, const LatticeFunction& f, const BigInt& x, const std::vector<BigInt>& lambda,
                 const IntegerSet* norm) {
  if (lambda.empty()) throw Error(ErrorKind::InvalidArgument, "cutoff set is empty");
  Real best = average_along(seq, f, x, lambda.front(), norm);
  for (std::size_t i = 1; i < lambda.size(); ++i) best = std::max(best, average_along(seq, f, x, lambda[i], norm));
  return best;
}

double max_average(const IntegerSet& seq, const DynamicalSystem& sys, const StepFunction& f, double x,
                   const std::vector<BigInt>& lambda, const IntegerSet* norm) {
  if (lambda.empty()) throw Error(ErrorKind::InvalidArgument, "cutoff set is empty");
  double best = average_along(seq, sys, f, x, lambda.front(), norm);
  for (std::size_t i = 1; i < lambda.size(); ++i) best = std::max(best, average_along(seq, sys, f, x, lambda[i], norm));
  return best;
}

std::optional<std::uint64_t> size_condition_violation(const PerturbedSequence& p, std::uint64_t u) {
  const PerturbationPlan& plan = p.plan();
  if (!plan.covers_block(u))
    throw Error(ErrorKind::PreconditionViolation, "plan does not cover block " + std::to_string(u));
  BlockIndex b = plan.schedule->block(u);
  auto first = b.start.convert_to<std::uint64_t>();
  auto last = (b.end() - 1).convert_to<std::uint64_t>();
  for (std::uint64_t k = first; k <= last; ++k) {
    const IntervalChoice& c = plan.choices[k];
    if (delta_count(p, 2 * c.n) > 4 * c.base_count) return k;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> smallest_size_condition_block(const PerturbedSequence& p, std::uint64_t u_max) {
  for (std::uint64_t u = 1; u <= u_max; ++u) {
    if (!p.plan().covers_block(u)) return std::nullopt;
    if (!size_condition_violation(p, u)) return u;
  }
  return std::nullopt;
}

WitnessProfile witness_profile(const PerturbedSequence& p, std::uint64_t u) {
  const PerturbationPlan& plan = p.plan();
  if (!plan.schedule) throw Error(ErrorKind::MissingPlan, "plan has no schedule");
  const Schedule& sched = *plan.schedule;
  PrecisionScope scope(kBaseBits);
  if (auto bad = size_condition_violation(p, u))
    throw Error(ErrorKind::PreconditionViolation,
                "size condition |Delta(2n_k)| <= 4|S(n_k)| fails at k = " + std::to_string(*bad));
  BigInt M = sched.M(u);
  if (M > (BigInt(1) << 24))
    throw Error(ErrorKind::ResourceLimit, "M(" + std::to_string(u) + ") is too large for an exhaustive shift scan");
  const auto m = M.convert_to<std::uint64_t>();

  WitnessProfile out;
  out.u = u;
  out.modulus = M;
  out.value = sched.witness_value(u);
  out.bound = sched.sweep_bound(u);
  out.best.assign(m, Real(-1));
  out.best_k.assign(m, 0);

  BlockIndex b = sched.block(u);
  auto first = b.start.convert_to<std::uint64_t>();
  auto last = (b.end() - 1).convert_to<std::uint64_t>();

  // Cumulative counts of (E_j \ S) by residue for j < k.
  std::vector<BigInt> added(m);
  for (std::uint64_t j = 0; j < first; ++j) {
    auto a = p.added_profile(j, m);
    for (std::uint64_t r = 0; r < m; ++r) added[r] += a[r];
  }
  bool chain_set = false;
  for (std::uint64_t k = first; k <= last; ++k) {
    auto a = p.added_profile(k, m);
    for (std::uint64_t r = 0; r < m; ++r) added[r] += a[r];
    const IntervalChoice& c = plan.choices[k];
    BigInt N = 2 * c.n;
    std::vector<BigInt> prof = p.base_profile(N, m);
    BigInt total = 0;
    for (std::uint64_t r = 0; r < m; ++r) {
      prof[r] += added[r];
      total += prof[r];
    }
    if (total != delta_count(p, N))
      throw Error(ErrorKind::PreconditionViolation, "residue profile disagrees with delta_count at k = " + std::to_string(k));
    Real scale = out.value / to_real(total);
    for (std::uint64_t n = 0; n < m; ++n) {
      // F_u(n + x) != 0 exactly when x = -n mod M
      Real avg = scale * to_real(prof[(m - n) % m]);
      if (avg > out.best[n]) {
        out.best[n] = avg;
        out.best_k[n] = k;
      }
    }
    {
      PrecisionScope scope(bit_length(c.base_count) + kBaseBits);
      Real v = sched.witness_value(u);
      if (to_real(c.insert_count) * v < 4 * to_real(c.base_count) * sched.sweep_bound(u)) out.chain_pass = false;
    }
    Real chain = to_real(c.insert_count) * out.value / (4 * to_real(c.base_count));
    if (!chain_set || chain < out.chain_min) {
      out.chain_min = chain;
      chain_set = true;
    }
  }
  return out;
}

SweepoutResult summarize(const WitnessProfile& profile) {
  SweepoutResult r;
  r.u = profile.u;
  r.bound = profile.bound;
  r.shifts = profile.best.size();
  r.achieved = *std::min_element(profile.best.begin(), profile.best.end());
  r.pass = r.achieved >= r.bound;
  r.chain_pass = profile.chain_pass;
  return r;
}

SweepoutResult sweepout_witness(const PerturbedSequence& p, std::uint64_t u) { return summarize(witness_profile(p, u)); }

}  // namespace pseq
