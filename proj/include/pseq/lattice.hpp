#pragma once

#include "pseq/numeric.hpp"

#include <utility>
#include <vector>

namespace pseq {

/// A nonnegative function on the integers, either periodic (sparse table of
/// nonzero residues) or finitely supported.
class LatticeFunction {
 public:
  using Entry = std::pair<BigInt, Real>;

  /// Residues in [0, period), unique; unlisted residues are zero.
  static LatticeFunction periodic(BigInt period, std::vector<Entry> entries);
  /// Support points unique; sorted on construction.
  static LatticeFunction finite(std::vector<Entry> entries);
  static LatticeFunction constant(const Real& value);

  bool is_periodic() const { return periodic_; }
  const BigInt& period() const { return period_; }
  const std::vector<Entry>& entries() const { return entries_; }

  Real operator()(const BigInt& n) const;
  /// Largest |value|.
  Real sup() const;

  /// Pointwise application of a map with map(0) = 0.
  template <typename Fn>
  LatticeFunction transformed(Fn&& fn) const {
    LatticeFunction out = *this;
    for (auto& e : out.entries_) e.second = fn(e.second);
    return out;
  }

 private:
  bool periodic_ = false;
  BigInt period_{1};
  std::vector<Entry> entries_;
};

}  // namespace pseq
