#pragma once

// Interval selection [n_k, 2n_k) and the perturbed sequence
// Delta = S ∪ E_0 ∪ E_1 ∪ ..., where E_k holds the ceil(R(u)|S(n_k)|)
// smallest integers of [n_k, 2n_k) congruent to k mod M(u), u the block of k.

#include "pseq/base_sequence.hpp"
#include "pseq/schedule.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pseq {

/// first, first + step, ..., first + (count - 1) * step.
struct Progression {
  BigInt first;
  BigInt step{1};
  BigInt count;

  BigInt end() const { return first + step * count; }  // exclusive bound, same residue as first
  BigInt last() const { return first + step * (count - 1); }
  bool contains(const BigInt& x) const;
  /// |P ∩ [1, n)|.
  BigInt count_below(const BigInt& n) const;
};

struct IntervalChoice {
  std::uint64_t k = 0;
  std::uint64_t u = 1;
  BigInt n;             // n_k
  BigInt modulus;       // M(u)
  BigInt residue;       // k mod M(u)
  BigInt base_count;    // |S(n_k)|
  BigInt insert_count;  // ceil(R(u) |S(n_k)|)
  BigInt record_m;      // density record point with n_k = floor(m / 2)
};

/// Each flag is the corresponding selection constraint evaluated exactly.
struct ConstraintReport {
  bool growth = false;       // n_k > 2 n_{k-1}
  bool capacity = false;     // n_k > R|S(n_k)|M and n_k >= ceil(R|S(n_k)|) M
  bool ratio = false;        // |S(n_k)| / n_k <= 1 / (R M)
  bool doubling = false;     // |S(2n_k)| <= 3 |S(n_k)|
  bool predecessor = false;  // R |S(n_k)| > sum_{j<k} |S(n_j)|

  bool all() const { return growth && capacity && ratio && doubling && predecessor; }
  /// Name of the first failing constraint, or empty.
  std::string first_failure() const;
};

ConstraintReport check_constraints(const BaseSequence& base, const Schedule& sched, const BigInt& n, std::uint64_t k,
                                   const BigInt& previous_n, const BigInt& predecessor_sum);

struct SelectionLimits {
  std::uint64_t max_k = 100'000;
  SearchBudget search;
};

/// Intervals for k = 0..k_max.
std::vector<IntervalChoice> select_intervals(const BaseSequence& base, const Schedule& sched, std::uint64_t k_max,
                                             const SelectionLimits& limits = {});

struct PerturbationPlan {
  std::shared_ptr<const BaseSequence> base;
  std::shared_ptr<const Schedule> schedule;
  std::vector<IntervalChoice> choices;
  std::vector<Progression> insertions;  // E_k, parallel to choices

  std::uint64_t k_max() const { return choices.empty() ? 0 : choices.back().k; }
  /// 2 n_{k_max}.
  BigInt horizon() const { return choices.empty() ? BigInt(1) : BigInt(2 * choices.back().n); }
  /// True when every k of block u has a choice.
  bool covers_block(std::uint64_t u) const;
};

PerturbationPlan build_plan(std::shared_ptr<const BaseSequence> base, std::shared_ptr<const Schedule> sched,
                            std::uint64_t k_max, const SelectionLimits& limits = {});

/// E_k for a selected interval.
Progression insertion_set(const IntervalChoice& c);

class PerturbedSequence final : public IntegerSet {
 public:
  explicit PerturbedSequence(PerturbationPlan plan);

  const PerturbationPlan& plan() const { return plan_; }
  const BaseSequence& base() const { return *plan_.base; }

  BigInt count(const BigInt& n) const override;
  BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const override;
  bool contains(const BigInt& x) const override;
  void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const override;

  /// |Delta(n) \ S| from the progressions and exact overlap counts.
  BigInt added_count(const BigInt& n) const;
  /// |E_k ∩ S|.
  const BigInt& overlap(std::size_t index) const { return overlaps_[index]; }
  /// Counts of E_index \ S in each residue class mod m.
  std::vector<BigInt> added_profile(std::size_t index, std::uint64_t m) const;
  /// Counts of S ∩ [1, n) in each residue class mod m.
  std::vector<BigInt> base_profile(const BigInt& n, std::uint64_t m) const;
  /// Counts of Delta ∩ [1, n) in each residue class mod m.
  std::vector<BigInt> residue_profile(const BigInt& n, std::uint64_t m) const;

 private:
  PerturbationPlan plan_;
  std::vector<BigInt> overlaps_;
};

/// |Delta ∩ [1, n)|.
BigInt delta_count(const PerturbedSequence& p, const BigInt& n);

/// |Delta(n) \ S| / |S(n)|; throws division-by-zero when |S(n)| = 0.
BigRational perturbation_ratio(const PerturbedSequence& p, const BigInt& n);

}  // namespace pseq
