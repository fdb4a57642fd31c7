#pragma once

// Term-wise and partial-sum checks of the convergent series behind the
// goodness halves of the three constructions.

#include "pseq/schedule.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pseq {

struct SeriesRow {
  std::uint64_t u = 0;
  double term = 0;
  double bound = 0;
  bool pass = false;
};

struct SeriesReport {
  Variant variant = Variant::TheoremA;
  double p = 0;  // 0 for the exponent-free Theorem A series
  std::uint64_t U = 0;
  std::vector<SeriesRow> rows;
  double partial_sum = 0;
  double comparison_bound = 0;  // bound the partial sum is checked against
  bool comparison_pass = false;
  std::vector<std::pair<std::string, double>> extras;
  std::vector<std::pair<std::string, bool>> flags;

  bool terms_pass() const;
  bool all_pass() const;
  double extra(const std::string& key) const;
  bool flag(const std::string& key) const;
};

/// c u^n < g(u) <= C u^n over 1 <= u <= U, n the fitted log-log slope.
struct GrowthFit {
  double n = 0;
  double c = 0;
  double C = 0;
  bool polynomial = false;  // slope stable across the range and n > 1
};

GrowthFit fit_growth(const Schedule& sched, std::uint64_t U);

/// sum_{r >= 1} r^k 2^{-K r}.
double polylog_tail(double K, unsigned k);

/// Per-term M(u) R(u)^q <= 1/u^2 + u / phi^{-1}(u^3)^q.
SeriesReport theorem_a_series(const Schedule& sched, std::uint64_t U);
/// sum_{u <= U} u / 2^{g(u)(p-1)} <= N^{2 alpha} + A, N = g^{-1}(1/(p-1)).
SeriesReport theorem_b_series(const Schedule& sched, const Rational& p, std::uint64_t U);
/// sum_{u <= U} u^k / 2^{g(u)(p-1)} <= N^{(k+1) alpha} + A plus the per-term
/// cancellation M(u)(2R(u))^p <= 4 u^k / 2^{g(u)(p-1)}.
SeriesReport lemma_series(const Schedule& sched, const Rational& p, std::uint64_t U);

/// Fixed-n bounds N^{2 alpha(n)} + sum_{u > N^alpha} u / 2^{u^n (p-1)} for
/// schedules whose g outgrows every polynomial.
struct FamilyCheck {
  unsigned n = 0;
  double alpha = 0;
  double bound = 0;
  bool applicable = false;  // g(u) >= u^n past N^alpha in the tested range
  bool pass = false;
};
std::vector<FamilyCheck> theorem_b_family(const Schedule& sched, const Rational& p, std::uint64_t U);

/// p = 1 + 1/n for n = 1..count.
std::vector<Rational> p_grid(unsigned count = 20);

}  // namespace pseq
