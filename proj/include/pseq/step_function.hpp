#pragma once

#include <functional>
#include <vector>

namespace pseq {

/// A function on [0,1) that is constant on each of finitely many half-open
/// pieces [b_i, b_{i+1}). Lebesgue measure is the piece length.
class StepFunction {
 public:
  StepFunction();  // zero function
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  static StepFunction constant(double value);
  /// value on [a, b), zero elsewhere.
  static StepFunction indicator(double a, double b, double value = 1.0);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }
  double length(std::size_t i) const { return breaks_[i + 1] - breaks_[i]; }

  double operator()(double x) const;

  StepFunction map(const std::function<double(double)>& fn) const;
  StepFunction abs() const;
  StepFunction positive_part() const;
  StepFunction negative_part() const;  // f^- = max(-f, 0)

  /// Pointwise combination on the common refinement of both partitions.
  static StepFunction combine(const StepFunction& f, const StepFunction& g,
                              const std::function<double(double, double)>& fn);

  double integral() const;
  double lp_norm(double p) const;
  double sup_abs() const;
  /// Measure of {x : pred(f(x))}.
  double measure_where(const std::function<bool(double)>& pred) const;

  /// Merge neighbouring pieces carrying the same value.
  StepFunction simplified() const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(double s, const StepFunction& f);

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

}  // namespace pseq
