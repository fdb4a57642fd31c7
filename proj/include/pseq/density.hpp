#pragma once

// Upper density D(f) = limsup (2N+1)^{-1} sum_{|n| <= N} |f(n)|.

#include "pseq/averages.hpp"
#include "pseq/lattice.hpp"
#include "pseq/schedule.hpp"

namespace pseq {

/// One-period mean of |f|; rejects finitely supported f.
Real exact_density(const LatticeFunction& f);
/// (2N+1)^{-1} sum_{n=-N}^{N} |f(n)|, exact up to rounding of the values.
Real finite_density(const LatticeFunction& f, const BigInt& N);
/// |finite_density - exact_density| <= period * sup|f| / (2N+1) for periodic f.
Real truncation_bound(const LatticeFunction& f, const BigInt& N);

/// D(Phi(F_u)) for the schedule's witness and Young functional.
Real witness_density(const Schedule& sched, std::uint64_t u);

/// Fraction of shifts n mod M(u) whose maximal witness average reaches K.
Real density_of_shift_set(const WitnessProfile& profile, const Real& K);
Real density_of_shift_set(const PerturbedSequence& p, std::uint64_t u, const Real& K);

}  // namespace pseq
