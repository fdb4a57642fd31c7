#pragma once

// Orlicz gauges phi: strictly increasing, unbounded, phi(x) = 1 for x <= 1.
// All logarithms are base 2 so that inverses of log-type gauges land on
// exact powers of two.

#include "pseq/numeric.hpp"
#include "pseq/step_function.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pseq {

enum class GaugeKind { Power, LogPower, LogLog, LogChain, Table };

class Gauge {
 public:
  /// x^a for x > 1. a = 0 gives the degenerate gauge phi == 1.
  static Gauge power(Rational a);
  /// (log2 x)^j, flat at 1 on [1,2].
  static Gauge log_power(Rational j);
  /// log2 log2 x, flat at 1 on [1,4].
  static Gauge log_log();
  /// 1 + i + log2^(i+1)(x) on [t_i, t_{i+1}), t_0 = 1, t_{i+1} = 2^{t_i}.
  static Gauge log_chain();
  /// Piecewise linear through (x, y) points starting at (1, 1), extended
  /// beyond the last point with the final slope.
  static Gauge table(std::vector<std::pair<double, double>> points);

  GaugeKind kind() const { return kind_; }
  const Rational& exponent() const { return exponent_; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }
  std::string describe() const;

  Real eval(const Real& x) const;
  double eval(double x) const;

  /// Largest x with phi(x) = y; throws for y < 1.
  Real inverse(const Real& y) const;
  double inverse(double y) const;

  /// log2(inverse(y)) computed without forming inverse(y) where possible.
  Real log2_inverse(const Real& y) const;

  /// phi is strictly increasing on (strict_from, inf) and equal to 1 below it.
  double strict_from() const;
  /// False for the degenerate constant gauge.
  bool admissible() const;

  friend bool operator==(const Gauge&, const Gauge&) = default;

 private:
  Gauge(GaugeKind kind, Rational exponent) : kind_(kind), exponent_(exponent) {}

  GaugeKind kind_;
  Rational exponent_;
  std::vector<std::pair<double, double>> points_;
};

/// Log-spaced grid 2^0, 2^step, ... up to max_x.
std::vector<double> log_grid(double max_x, double step = 0.5);

bool sampled_strictly_increasing(const Gauge& g, const std::vector<double>& grid);
/// Some x with phi(x) > bound.
Real unbounded_witness(const Gauge& g, const Real& bound);
/// Grid point past which x^{q-1}/phi(x) is sampled as strictly increasing,
/// or nullopt when it is not increasing at the end of the grid.
std::optional<double> young_threshold(const Gauge& g, const Rational& q, double max_x = 1e9);
/// Sampled check of phi << x^q: phi(x)/x^q strictly decreasing over the tail of the grid.
bool sampled_power_domination(const Gauge& g, const Rational& q, double max_x = 1e9);

class YoungFunctional {
 public:
  enum class Form { XPhi, PowerOverPhi, Identity };

  static YoungFunctional x_phi(Gauge g);
  static YoungFunctional power_over_phi(Gauge g, Rational q);
  static YoungFunctional identity();

  Form form() const { return form_; }
  const std::optional<Gauge>& gauge() const { return gauge_; }
  const Rational& q() const { return q_; }

  /// Phi(|x|), with Phi(0) = 0.
  Real apply(const Real& x) const;
  double apply(double x) const;

 private:
  YoungFunctional(Form form, std::optional<Gauge> g, Rational q) : form_(form), gauge_(std::move(g)), q_(q) {}

  Form form_;
  std::optional<Gauge> gauge_;
  Rational q_{1, 1};
};

/// Sum over pieces of length * Phi(|value|).
double orlicz_integral(const YoungFunctional& Phi, const StepFunction& f);

}  // namespace pseq
