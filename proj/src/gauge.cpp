#include "pseq/gauge.hpp"

#include "pseq/errors.hpp"

#include <cmath>
#include <sstream>

namespace pseq {

namespace {

Rational reciprocal(const Rational& r) {
  if (r.num == 0) throw Error(ErrorKind::PreconditionViolation, "reciprocal of zero exponent");
  return r.num > 0 ? Rational{r.den, r.num} : Rational{-r.den, -r.num};
}

double table_eval(const std::vector<std::pair<double, double>>& pts, double x) {
  if (x <= 1.0) return 1.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (x <= pts[i + 1].first) {
      double t = (x - pts[i].first) / (pts[i + 1].first - pts[i].first);
      return pts[i].second + t * (pts[i + 1].second - pts[i].second);
    }
  }
  const auto& a = pts[pts.size() - 2];
  const auto& b = pts.back();
  return b.second + (x - b.first) * (b.second - a.second) / (b.first - a.first);
}

}  // namespace

Gauge Gauge::power(Rational a) {
  if (a.num < 0) throw Error(ErrorKind::InvalidArgument, "power gauge exponent must be >= 0");
  return Gauge(GaugeKind::Power, a);
}

Gauge Gauge::log_power(Rational j) {
  if (j.num <= 0) throw Error(ErrorKind::InvalidArgument, "log-power gauge exponent must be > 0");
  return Gauge(GaugeKind::LogPower, j);
}

Gauge Gauge::log_log() { return Gauge(GaugeKind::LogLog, {1, 1}); }

Gauge Gauge::log_chain() { return Gauge(GaugeKind::LogChain, {1, 1}); }

Gauge Gauge::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorKind::InvalidArgument, "table gauge needs at least two points");
  if (points.front() != std::pair<double, double>{1.0, 1.0})
    throw Error(ErrorKind::InvalidArgument, "table gauge must start at (1, 1)");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i].first < points[i + 1].first && points[i].second < points[i + 1].second))
      throw Error(ErrorKind::InvalidArgument, "table gauge points must be strictly increasing in x and y");
  Gauge g(GaugeKind::Table, {1, 1});
  g.points_ = std::move(points);
  return g;
}

std::string Gauge::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case GaugeKind::Power: os << "power(a=" << to_string(exponent_) << ")"; break;
    case GaugeKind::LogPower: os << "log-power(j=" << to_string(exponent_) << ")"; break;
    case GaugeKind::LogLog: os << "log-log"; break;
    case GaugeKind::LogChain: os << "log-chain"; break;
    case GaugeKind::Table: os << "table(" << points_.size() << " points)"; break;
  }
  return os.str();
}

Real Gauge::eval(const Real& x) const {
  switch (kind_) {
    case GaugeKind::Power:
      if (x <= 1 || exponent_.num == 0) return Real(1);
      return real_pow(x, exponent_);
    case GaugeKind::LogPower:
      if (x <= 2) return Real(1);
      return real_pow(real_log2(x), exponent_);
    case GaugeKind::LogLog:
      if (x <= 4) return Real(1);
      return real_log2(real_log2(x));
    case GaugeKind::LogChain: {
      if (x <= 1) return Real(1);
      Real y = x;
      int level = 0;
      while (y >= 2) {
        y = real_log2(y);
        ++level;
      }
      return Real(1 + level) + real_log2(y);
    }
    case GaugeKind::Table:
      return Real(table_eval(points_, to_double(x)));
  }
  return Real(1);
}

double Gauge::eval(double x) const {
  PrecisionScope scope(kBaseBits);
  return to_double(eval(Real(x)));
}

Real Gauge::inverse(const Real& y) const {
  if (y < 1) throw Error(ErrorKind::InvalidArgument, "gauge inverse needs y >= 1");
  switch (kind_) {
    case GaugeKind::Power:
      if (exponent_.num == 0) {
        if (y == 1) return Real(1);
        throw Error(ErrorKind::PreconditionViolation, "constant gauge has no inverse above 1");
      }
      return real_pow(y, reciprocal(exponent_));
    case GaugeKind::LogPower:
      return real_exp2(real_pow(y, reciprocal(exponent_)));
    case GaugeKind::LogLog:
      return real_exp2(real_exp2(y));
    case GaugeKind::LogChain: {
      Real t = y - 1;
      Real level_r = boost::multiprecision::floor(t);
      long level = level_r.convert_to<long>();
      Real x = real_exp2(t - level_r);
      for (long i = 0; i < level; ++i) x = real_exp2(x);
      return x;
    }
    case GaugeKind::Table: {
      double target = to_double(y);
      if (target == 1.0) return Real(1);
      double lo = 1.0, hi = 2.0;
      while (table_eval(points_, hi) < target) {
        lo = hi;
        hi *= 2.0;
      }
      while (hi - lo > 1e-13 * hi) {
        double mid = 0.5 * (lo + hi);
        if (table_eval(points_, mid) < target) lo = mid; else hi = mid;
      }
      return Real(0.5 * (lo + hi));
    }
  }
  return Real(1);
}

double Gauge::inverse(double y) const {
  PrecisionScope scope(kBaseBits);
  return to_double(inverse(Real(y)));
}

Real Gauge::log2_inverse(const Real& y) const {
  if (y < 1) throw Error(ErrorKind::InvalidArgument, "gauge inverse needs y >= 1");
  switch (kind_) {
    case GaugeKind::Power:
      if (exponent_.num == 0) return real_log2(inverse(y));
      return real_log2(y) * Real(exponent_.den) / Real(exponent_.num);
    case GaugeKind::LogPower:
      return real_pow(y, reciprocal(exponent_));
    case GaugeKind::LogLog:
      return real_exp2(y);
    case GaugeKind::LogChain: {
      Real t = y - 1;
      Real level_r = boost::multiprecision::floor(t);
      long level = level_r.convert_to<long>();
      if (level == 0) return t;
      Real x = real_exp2(t - level_r);
      for (long i = 0; i + 1 < level; ++i) x = real_exp2(x);
      return x;
    }
    case GaugeKind::Table:
      return real_log2(inverse(y));
  }
  return Real(0);
}

double Gauge::strict_from() const {
  switch (kind_) {
    case GaugeKind::LogPower: return 2.0;
    case GaugeKind::LogLog: return 4.0;
    default: return 1.0;
  }
}

bool Gauge::admissible() const { return !(kind_ == GaugeKind::Power && exponent_.num == 0); }

std::vector<double> log_grid(double max_x, double step) {
  std::vector<double> grid;
  for (double t = 0.0;; t += step) {
    double x = std::exp2(t);
    if (x > max_x) break;
    grid.push_back(x);
  }
  return grid;
}

bool sampled_strictly_increasing(const Gauge& g, const std::vector<double>& grid) {
  PrecisionScope scope(kBaseBits);
  std::optional<Real> prev;
  for (double x : grid) {
    if (x <= g.strict_from()) continue;
    Real v = g.eval(Real(x));
    if (prev && !(*prev < v)) return false;
    prev = v;
  }
  return true;
}

Real unbounded_witness(const Gauge& g, const Real& bound) {
  if (!g.admissible()) throw Error(ErrorKind::PreconditionViolation, "constant gauge is bounded");
  Real target = bound < 1 ? Real(2) : Real(bound + 1);
  Real x = g.inverse(target);
  // Table inverses are bisection results; step past the target.
  while (!(g.eval(x) > bound)) x *= 2;
  return x;
}

std::optional<double> young_threshold(const Gauge& g, const Rational& q, double max_x) {
  PrecisionScope scope(kBaseBits);
  auto grid = log_grid(max_x);
  std::vector<Real> h;
  h.reserve(grid.size());
  Real qm1 = q.real() - 1;
  for (double x : grid) h.push_back(boost::multiprecision::pow(Real(x), qm1) / g.eval(Real(x)));
  if (h.size() < 2 || !(h[h.size() - 2] < h.back())) return std::nullopt;
  std::size_t i = h.size() - 1;
  while (i > 0 && h[i - 1] < h[i]) --i;
  return grid[i];
}

bool sampled_power_domination(const Gauge& g, const Rational& q, double max_x) {
  PrecisionScope scope(kBaseBits);
  auto grid = log_grid(max_x);
  Real qr = q.real();
  auto ratio = [&](double x) { return g.eval(Real(x)) / boost::multiprecision::pow(Real(x), qr); };
  std::size_t n = grid.size();
  if (n < 4) return false;
  // Tail quarter of the grid must be strictly decreasing.
  for (std::size_t i = n - n / 4; i < n; ++i)
    if (!(ratio(grid[i]) < ratio(grid[i - 1]))) return false;
  return ratio(grid.back()) < ratio(grid.front());
}

YoungFunctional YoungFunctional::x_phi(Gauge g) { return YoungFunctional(Form::XPhi, std::move(g), {1, 1}); }

YoungFunctional YoungFunctional::power_over_phi(Gauge g, Rational q) {
  if (q.num < q.den) throw Error(ErrorKind::InvalidArgument, "x^q/phi(x) needs q >= 1");
  return YoungFunctional(Form::PowerOverPhi, std::move(g), q);
}

YoungFunctional YoungFunctional::identity() { return YoungFunctional(Form::Identity, std::nullopt, {1, 1}); }

Real YoungFunctional::apply(const Real& x) const {
  Real a = boost::multiprecision::abs(x);
  if (a == 0) return Real(0);
  switch (form_) {
    case Form::XPhi: return a * gauge_->eval(a);
    case Form::PowerOverPhi: return real_pow(a, q_) / gauge_->eval(a);
    case Form::Identity: return a;
  }
  return a;
}

double YoungFunctional::apply(double x) const {
  PrecisionScope scope(kBaseBits);
  return to_double(apply(Real(x)));
}

double orlicz_integral(const YoungFunctional& Phi, const StepFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    double v = f.values()[i];
    if (v != 0.0) s += f.length(i) * Phi.apply(v);
  }
  return s;
}

}  // namespace pseq
