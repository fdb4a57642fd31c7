#pragma once

// Ergodic averages along integer sets for the integer shift and an
// irrational circle rotation, maximal averages over finite cutoff sets, and
// the sweep-out witness scan over a full residue system.

#include "pseq/construction.hpp"
#include "pseq/lattice.hpp"
#include "pseq/step_function.hpp"

#include <optional>
#include <vector>

namespace pseq {

class DynamicalSystem {
 public:
  enum class Kind { Shift, Rotation };

  static DynamicalSystem shift();
  /// x -> x + alpha mod 1 with alpha = sqrt(2) - 1.
  static DynamicalSystem rotation();

  Kind kind() const { return kind_; }
  /// frac(x + m * alpha) evaluated with enough precision for m.
  double orbit_point(double x, const BigInt& m) const;

 private:
  explicit DynamicalSystem(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// sum_{m in seq ∩ [1, N)} f(x + m) / |norm ∩ [1, N)|, norm defaulting to seq.
/// Periodic f is summed by residue class and finite f by membership, so N may be huge.
Real average_along(const IntegerSet& seq, const LatticeFunction& f, const BigInt& x, const BigInt& N,
                   const IntegerSet* norm = nullptr);

/// sum_{m in seq ∩ [1, N)} f(frac(x + m alpha)) / |norm ∩ [1, N)| for the rotation.
double average_along(const IntegerSet& seq, const DynamicalSystem& sys, const StepFunction& f, double x,
                     const BigInt& N, const IntegerSet* norm = nullptr);

/// Max of average_along over the cutoffs in lambda (nonempty).
Real max_average(const IntegerSet& seq, const LatticeFunction& f, const BigInt& x, const std::vector<BigInt>& lambda,
                 const IntegerSet* norm = nullptr);
double max_average(const IntegerSet& seq, const DynamicalSystem& sys, const StepFunction& f, double x,
                   const std::vector<BigInt>& lambda, const IntegerSet* norm = nullptr);

/// For each shift n mod M(u), the largest witness average over cutoffs 2 n_k, k in A_u.
struct WitnessProfile {
  std::uint64_t u = 0;
  BigInt modulus;
  Real value;                       // nonzero value of F_u
  Real bound;                       // sweep_bound(u)
  std::vector<Real> best;           // indexed by shift n
  std::vector<std::uint64_t> best_k;
  Real chain_min;                   // min over k of insert_count * value / (4 |S(n_k)|)
  bool chain_pass = true;           // chain_min >= bound, compared at full precision per k
};

struct SweepoutResult {
  std::uint64_t u = 0;
  Real achieved;  // min over shifts
  Real bound;
  bool pass = false;
  bool chain_pass = false;  // per-k chain insert_count * value / (4|S(n_k)|) >= bound
  std::uint64_t shifts = 0;
};

/// |Delta(2n_k)| <= 4 |S(n_k)| for every k of block u; nullopt when it holds,
/// else the first offending k.
std::optional<std::uint64_t> size_condition_violation(const PerturbedSequence& p, std::uint64_t u);
/// Smallest u <= u_max whose block satisfies the size condition and is covered by the plan.
std::optional<std::uint64_t> smallest_size_condition_block(const PerturbedSequence& p, std::uint64_t u_max);

/// Exhaustive scan over shifts mod M(u) <= 2^24. Throws precondition-violation
/// if the plan misses block u or the size condition fails.
WitnessProfile witness_profile(const PerturbedSequence& p, std::uint64_t u);
SweepoutResult sweepout_witness(const PerturbedSequence& p, std::uint64_t u);
SweepoutResult summarize(const WitnessProfile& profile);

}  // namespace pseq
