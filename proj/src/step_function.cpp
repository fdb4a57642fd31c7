#include "pseq/step_function.hpp"

#include "pseq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pseq {

StepFunction::StepFunction() : breaks_{0.0, 1.0}, values_{0.0} {}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
    throw Error(ErrorKind::InvalidArgument, "step function needs n+1 breaks for n values");
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0)
    throw Error(ErrorKind::InvalidArgument, "step function partition must span [0,1)");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1])) throw Error(ErrorKind::InvalidArgument, "breaks must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "step function values must be finite");
}

StepFunction StepFunction::constant(double value) { return StepFunction({0.0, 1.0}, {value}); }

StepFunction StepFunction::indicator(double a, double b, double value) {
  if (!(0.0 <= a && a < b && b <= 1.0)) throw Error(ErrorKind::InvalidArgument, "indicator needs 0 <= a < b <= 1");
  std::vector<double> br{0.0};
  std::vector<double> vals;
  if (a > 0.0) { br.push_back(a); vals.push_back(0.0); }
  br.push_back(b);
  vals.push_back(value);
  if (b < 1.0) { br.push_back(1.0); vals.push_back(0.0); }
  return StepFunction(std::move(br), std::move(vals));
}

double StepFunction::operator()(double x) const {
  if (x < 0.0 || x >= 1.0) throw Error(ErrorKind::InvalidArgument, "step function evaluated outside [0,1)");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

StepFunction StepFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(), fn);
  return StepFunction(breaks_, std::move(vals));
}

StepFunction StepFunction::abs() const { return map([](double v) { return std::fabs(v); }); }
StepFunction StepFunction::positive_part() const { return map([](double v) { return v > 0 ? v : 0.0; }); }
StepFunction StepFunction::negative_part() const { return map([](double v) { return v < 0 ? -v : 0.0; }); }

StepFunction StepFunction::combine(const StepFunction& f, const StepFunction& g,
                                   const std::function<double(double, double)>& fn) {
  std::vector<double> br;
  br.reserve(f.breaks_.size() + g.breaks_.size());
  std::merge(f.breaks_.begin(), f.breaks_.end(), g.breaks_.begin(), g.breaks_.end(), std::back_inserter(br));
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<double> vals;
  vals.reserve(br.size() - 1);
  std::size_t i = 0, j = 0;
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    while (f.breaks_[i + 1] <= br[p]) ++i;
    while (g.breaks_[j + 1] <= br[p]) ++j;
    vals.push_back(fn(f.values_[i], g.values_[j]));
  }
  return StepFunction(std::move(br), std::move(vals));
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += length(i) * values_[i];
  return s;
}

double StepFunction::lp_norm(double p) const {
  if (std::isinf(p)) return sup_abs();
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "Lp norm needs p >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double a = std::fabs(values_[i]);
    if (a != 0.0) s += length(i) * std::pow(a, p);
  }
  return std::pow(s, 1.0 / p);
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double StepFunction::measure_where(const std::function<bool(double)>& pred) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (pred(values_[i])) s += length(i);
  return s;
}

StepFunction StepFunction::simplified() const {
  std::vector<double> br{breaks_.front()};
  std::vector<double> vals;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!vals.empty() && vals.back() == values_[i]) {
      br.back() = breaks_[i + 1];
    } else {
      vals.push_back(values_[i]);
      br.push_back(breaks_[i + 1]);
    }
  }
  return StepFunction(std::move(br), std::move(vals));
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return StepFunction::combine(a, b, [](double x, double y) { return x + y; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return StepFunction::combine(a, b, [](double x, double y) { return x - y; });
}

StepFunction operator*(double s, const StepFunction& f) {
  return f.map([s](double v) { return s * v; });
}

}  // namespace pseq
