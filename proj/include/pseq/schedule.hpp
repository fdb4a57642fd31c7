#pragma once

// Block partition A_u of {0, 1, 2, ...} and the schedule functions M, R, g
// with the witness lattice function F_u for the three constructions:
//
//   TheoremA  M = floor(phi^{-1}(u^3)^q / u^3)   R = u^{1/q} / phi^{-1}(u^3)
//   TheoremB  M = floor(2^g)                     R = u^{1/2} / 2^g,  g = log2 phi^{-1}(u^4)
//   Lemma14   M = floor(2^g psi(2^g))            R = (u^k / psi(2^g))^{1/2} / 2^g,
//                                                g = log2 phi^{-1}(u^{k+1})

#include "pseq/gauge.hpp"
#include "pseq/lattice.hpp"
#include "pseq/numeric.hpp"

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pseq {

enum class Variant { TheoremA, TheoremB, Lemma14 };

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

struct ScheduleSpec {
  Variant variant = Variant::TheoremA;
  Gauge phi = Gauge::power({1, 2});
  std::optional<Gauge> psi;  // Lemma14 only
  Rational q{2, 1};          // TheoremA only
  unsigned k = 1;            // Lemma14 only
};

struct ScheduleCaps {
  unsigned max_block_bits = 128;  // M(u) < 2^max_block_bits
  std::uint64_t max_u = 64;       // block scans stop here
};

struct BlockIndex {
  std::uint64_t u = 0;
  BigInt start;   // sum_{j<u} M(j)
  BigInt length;  // M(u)
  BigInt end() const { return start + length; }
  bool contains(const BigInt& k) const { return start <= k && k < end(); }
};

class Schedule {
 public:
  explicit Schedule(ScheduleSpec spec, ScheduleCaps caps = {});

  const ScheduleSpec& spec() const { return spec_; }
  const ScheduleCaps& caps() const { return caps_; }
  Variant variant() const { return spec_.variant; }
  std::string describe() const;

  BigInt M(std::uint64_t u) const;
  /// Evaluated at the caller's working precision.
  Real R(std::uint64_t u) const;
  /// Exponent g(u); TheoremB and Lemma14 only.
  Real g(std::uint64_t u) const;
  /// Nonzero value of F_u: phi^{-1}(u^3) (TheoremA) or 2^{g(u)}.
  Real witness_value(std::uint64_t u) const;
  /// Phi with D(Phi(F_u)) the density controlled by the construction.
  YoungFunctional witness_functional() const;
  /// Proven lower bound on the maximal witness average for block u.
  Real sweep_bound(std::uint64_t u) const;

  BlockIndex block(std::uint64_t u) const;
  BlockIndex block_of(const BigInt& k) const;
  /// F_u(n) = witness_value(u) if n = 0 mod M(u), else 0.
  LatticeFunction witness(std::uint64_t u) const;

 private:
  Real exact_M_value(std::uint64_t u) const;  // the quantity M(u) floors
  void extend_prefix(std::uint64_t u) const;

  ScheduleSpec spec_;
  ScheduleCaps caps_;
  mutable std::mutex mutex_;
  mutable std::vector<BigInt> m_cache_;       // M(1..)
  mutable std::vector<BigInt> prefix_cache_;  // prefix_cache_[u-1] = sum_{j<u} M(j)
};

}  // namespace pseq
