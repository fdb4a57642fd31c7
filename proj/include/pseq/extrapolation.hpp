#pragma once

// Extrapolation from L^p bounds with constants phi(e^{1/(p-1)}) to an
// L phi(L) bound at L^1 scale, traced step by step on concrete step functions.

#include "pseq/gauge.hpp"
#include "pseq/step_function.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pseq {

struct OperatorHandle {
  std::string name;
  std::function<StepFunction(const StepFunction&)> apply;
  bool positive = true;
  bool sublinear = true;
  bool linf_bounded = true;

  StepFunction operator()(const StepFunction& f) const { return apply(f); }

  static OperatorHandle identity();
  /// Conditional expectation onto dyadic intervals of length 2^-levels.
  static OperatorHandle dyadic_average(unsigned levels = 10);
  static OperatorHandle scaled_identity(double factor);
};

struct OperatorAudit {
  std::size_t samples = 0;
  bool positive = true;   // f >= 0 implies Tf >= 0 on every sample
  bool sublinear = true;  // |T(f+g)| <= |Tf| + |Tg| pointwise on every sample
};
OperatorAudit audit_operator(const OperatorHandle& T, std::mt19937_64& rng, std::size_t samples = 32);

/// Breakpoints on the grid 2^-20, at most max_pieces pieces, values in [-max_abs, max_abs].
StepFunction random_step_function(std::mt19937_64& rng, unsigned max_pieces = 64, double max_abs = 1000);

/// a <= b up to a relative slack of 1e-12.
bool leq_with_slack(double a, double b);

struct HypothesisRow {
  double p = 0;
  double lhs = 0;  // ||Tf||_p
  double rhs = 0;  // phi(e^{1/(p-1)}) ||f||_p
  bool pass = false;
};

struct HypothesisReport {
  std::vector<HypothesisRow> rows;
  bool all_pass() const;
};

HypothesisReport check_hypothesis(const OperatorHandle& T, const StepFunction& f, const Gauge& phi,
                                  const std::vector<Rational>& grid);

/// phi(x) <= c sqrt(x) over a log grid up to max_x, with phi(x)/sqrt(x)
/// nonincreasing over the tail of the grid.
struct SqrtDomination {
  double c = 0;
  bool ok = false;
};
SqrtDomination sqrt_domination(const Gauge& phi, double max_x = 1e12);

/// sum_{n >= 0} e^{n+1} phi(e^n) e^{-2n}.
double small_measure_constant(const Gauge& phi);
/// 2a + 2a' + 8 e^3 phi(2) with a = a' = small_measure_constant(phi).
double constant_A_phi(const Gauge& phi);

struct TraceStep {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
};

struct DecompositionTrace {
  StepFunction g_plus;
  StepFunction g_minus;
  std::vector<double> level_measure_plus;  // m(E_n) for g+
  std::vector<double> level_measure_minus;
  double a_phi = 0;
  double A_phi = 0;
  std::vector<TraceStep> steps;

  bool pass() const;
  std::optional<TraceStep> first_failure() const;
  const TraceStep& step(const std::string& name) const;
};

DecompositionTrace trace_conclusion(const OperatorHandle& T, const StepFunction& f, const Gauge& phi);

}  // namespace pseq
