#include "pseq/extrapolation.hpp"

#include "pseq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pseq {

namespace {

const double kE = std::exp(1.0);
const double kE3 = std::exp(3.0);

double integral_over(const StepFunction& f, double a, double b) {
  double total = 0;
  const auto& br = f.breaks();
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    double lo = std::max(a, br[i]), hi = std::min(b, br[i + 1]);
    if (hi > lo) total += (hi - lo) * f.values()[i];
  }
  return total;
}

int level_of(double g) {
  int n = static_cast<int>(std::floor(std::log(g)));
  while (n > 0 && std::exp(static_cast<double>(n)) > g) --n;
  while (std::exp(static_cast<double>(n + 1)) <= g) ++n;
  return std::max(n, 0);
}

}  // namespace

bool leq_with_slack(double a, double b) { return a <= b + 1e-12 * std::max(1.0, std::fabs(b)); }

OperatorHandle OperatorHandle::identity() {
  return {"identity", [](const StepFunction& f) { return f; }, true, true, true};
}

OperatorHandle OperatorHandle::dyadic_average(unsigned levels) {
  if (levels > 24) throw Error(ErrorKind::InvalidArgument, "dyadic averaging depth is capped at 24");
  return {"dyadic-average-" + std::to_string(levels),
          [levels](const StepFunction& f) {
            const std::size_t blocks = std::size_t{1} << levels;
            const double width = 1.0 / static_cast<double>(blocks);
            std::vector<double> breaks(blocks + 1), values(blocks);
            for (std::size_t k = 0; k <= blocks; ++k) breaks[k] = static_cast<double>(k) * width;
            breaks[blocks] = 1.0;
            for (std::size_t k = 0; k < blocks; ++k) values[k] = integral_over(f, breaks[k], breaks[k + 1]) / width;
            return StepFunction(std::move(breaks), std::move(values)).simplified();
          },
          true, true, true};
}

OperatorHandle OperatorHandle::scaled_identity(double factor) {
  return {"scaled-identity", [factor](const StepFunction& f) { return factor * f; }, factor >= 0, true, true};
}

OperatorAudit audit_operator(const OperatorHandle& T, std::mt19937_64& rng, std::size_t samples) {
  OperatorAudit audit;
  audit.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    StepFunction f = random_step_function(rng, 16, 100), g = random_step_function(rng, 16, 100);
    StepFunction tf = T(f), tg = T(g), tfg = T(f + g);
    StepFunction slack = tf.abs() + tg.abs() - tfg.abs();
    for (double v : slack.values())
      if (v < -1e-9 * (1 + f.sup_abs() + g.sup_abs())) audit.sublinear = false;
    StepFunction tabs = T(f.abs());
    for (double v : tabs.values())
      if (v < 0) audit.positive = false;
  }
  return audit;
}

StepFunction random_step_function(std::mt19937_64& rng, unsigned max_pieces, double max_abs) {
  if (max_pieces < 1) throw Error(ErrorKind::InvalidArgument, "a step function needs at least one piece");
  constexpr std::uint64_t kGrid = std::uint64_t{1} << 20;
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  unsigned pieces = 1 + static_cast<unsigned>(rng() % max_pieces);
  std::set<std::uint64_t> cuts;
  while (cuts.size() + 1 < pieces) cuts.insert(1 + rng() % (kGrid - 1));
  std::vector<double> breaks{0.0};
  for (std::uint64_t c : cuts) breaks.push_back(static_cast<double>(c) / static_cast<double>(kGrid));
  breaks.push_back(1.0);
  std::vector<double> values(pieces);
  for (double& v : values) v = (2 * unit() - 1) * max_abs;
  return StepFunction(std::move(breaks), std::move(values));
}

bool HypothesisReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const HypothesisRow& r) { return r.pass; });
}

HypothesisReport check_hypothesis(const OperatorHandle& T, const StepFunction& f, const Gauge& phi,
                                  const std::vector<Rational>& grid) {
  HypothesisReport rep;
  StepFunction tf = T(f);
  for (const Rational& pr : grid) {
    double p = pr.value();
    if (!(p > 1)) throw Error(ErrorKind::InvalidArgument, "hypothesis grid needs p > 1");
    HypothesisRow row;
    row.p = p;
    row.lhs = tf.lp_norm(p);
    row.rhs = phi.eval(std::exp(1.0 / (p - 1))) * f.lp_norm(p);
    row.pass = leq_with_slack(row.lhs, row.rhs);
    rep.rows.push_back(row);
  }
  return rep;
}

SqrtDomination sqrt_domination(const Gauge& phi, double max_x) {
  std::vector<double> grid = log_grid(max_x, 0.25);
  SqrtDomination out;
  std::vector<double> ratio;
  for (double x : grid) {
    double r = phi.eval(x) / std::sqrt(x);
    ratio.push_back(r);
    out.c = std::max(out.c, r);
  }
  // The ratio must not be increasing over the last quarter of the grid.
  std::size_t from = ratio.size() - std::max<std::size_t>(2, ratio.size() / 4);
  out.ok = true;
  for (std::size_t i = from + 1; i < ratio.size(); ++i)
    if (ratio[i] > ratio[i - 1] * (1 + 1e-12)) out.ok = false;
  return out;
}

double small_measure_constant(const Gauge& phi) {
  if (!sqrt_domination(phi).ok)
    throw Error(ErrorKind::PreconditionViolation, "gauge " + phi.describe() + " is not dominated by c*sqrt(x)");
  double total = 0;
  for (int n = 0;; ++n) {
    double term = std::exp(static_cast<double>(n + 1) - 2.0 * n) * phi.eval(std::exp(static_cast<double>(n)));
    total += term;
    if (n > 8 && term < 1e-18 * total) break;
    if (n > 700) throw Error(ErrorKind::PreconditionViolation, "small-measure series does not settle");
  }
  return total;
}

double constant_A_phi(const Gauge& phi) {
  double a = small_measure_constant(phi);
  return 4 * a + 8 * kE3 * phi.eval(2.0);
}

bool DecompositionTrace::pass() const {
  return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) { return s.pass; });
}

std::optional<TraceStep> DecompositionTrace::first_failure() const {
  for (const auto& s : steps)
    if (!s.pass) return s;
  return std::nullopt;
}

const TraceStep& DecompositionTrace::step(const std::string& name) const {
  for (const auto& s : steps)
    if (s.name == name) return s;
  throw Error(ErrorKind::InvalidArgument, "trace has no step '" + name + "'");
}

namespace {

struct HalfTrace {
  double t_g = 0;  // int |T g|
};

HalfTrace trace_half(const OperatorHandle& T, const StepFunction& g, const Gauge& phi, double a_phi,
                     const std::string& tag, std::vector<double>& measures, std::vector<TraceStep>& steps) {
  auto add = [&](const std::string& name, double lhs, double rhs) {
    steps.push_back({name + tag, lhs, rhs, leq_with_slack(lhs, rhs)});
  };
  auto gphi = [&](double x) { return x * phi.eval(x); };

  // Level of each piece and the sandwich e^n <= g < e^{n+1}.
  std::vector<int> level(g.pieces());
  int top = 0;
  std::size_t sandwich_bad = 0;
  for (std::size_t i = 0; i < g.pieces(); ++i) {
    double v = g.values()[i];
    level[i] = level_of(v);
    top = std::max(top, level[i]);
    if (!(std::exp(static_cast<double>(level[i])) <= v && v < std::exp(static_cast<double>(level[i] + 1))))
      ++sandwich_bad;
  }
  steps.push_back({"sandwich" + tag, static_cast<double>(sandwich_bad), 0.0, sandwich_bad == 0});
  measures.assign(static_cast<std::size_t>(top) + 1, 0.0);
  for (std::size_t i = 0; i < g.pieces(); ++i) measures[static_cast<std::size_t>(level[i])] += g.length(i);

  HalfTrace out;
  out.t_g = T(g).abs().integral();
  double pieces_sum = 0, en_sum = 0, small = 0, large = 0, large_e2 = 0, large_e3 = 0;
  for (int n = 0; n <= top; ++n) {
    double m = measures[static_cast<std::size_t>(n)];
    if (m <= 0) continue;
    std::vector<double> ind(g.pieces());
    for (std::size_t i = 0; i < g.pieces(); ++i) ind[i] = level[i] == n ? 1.0 : 0.0;
    StepFunction chi(g.breaks(), ind);
    double t_chi = T(chi).abs().integral();
    double en = std::exp(static_cast<double>(n));
    double bound = n == 0 ? 1.0 : phi.eval(en) * std::pow(m, static_cast<double>(n) / (n + 1));
    add("level" + std::to_string(n), t_chi, bound);
    pieces_sum += std::exp(static_cast<double>(n + 1)) * t_chi;
    double term = std::exp(static_cast<double>(n + 1)) * phi.eval(en) * std::pow(m, static_cast<double>(n) / (n + 1));
    en_sum += term;
    if (m < std::exp(-2.0 * (n + 1))) {
      small += term;
    } else {
      large += term;
      large_e2 += kE * kE * std::exp(static_cast<double>(n + 1)) * phi.eval(en) * m;
      large_e3 += kE3 * en * phi.eval(en) * m;
    }
  }
  double integral_gphi = g.map(gphi).integral();
  add("sublinear", out.t_g, pieces_sum);
  add("level-sum", out.t_g, en_sum);
  add("small-measure", small, a_phi);
  add("large-measure", large, large_e2);
  add("large-reindex", large_e2, large_e3 * (1 + 1e-15));
  add("large-integral", large_e3, kE3 * integral_gphi);
  add("half", out.t_g, a_phi + kE3 * integral_gphi);
  return out;
}

}  // namespace

DecompositionTrace trace_conclusion(const OperatorHandle& T, const StepFunction& f, const Gauge& phi) {
  DecompositionTrace tr;
  tr.a_phi = small_measure_constant(phi);
  tr.A_phi = 4 * tr.a_phi + 8 * kE3 * phi.eval(2.0);
  tr.g_plus = f.positive_part().map([](double v) { return v / 2 + 1; });
  tr.g_minus = f.negative_part().map([](double v) { return v / 2 + 1; });

  HalfTrace plus = trace_half(T, tr.g_plus, phi, tr.a_phi, "+", tr.level_measure_plus, tr.steps);
  HalfTrace minus = trace_half(T, tr.g_minus, phi, tr.a_phi, "-", tr.level_measure_minus, tr.steps);
  auto add = [&](const std::string& name, double lhs, double rhs) {
    tr.steps.push_back({name, lhs, rhs, leq_with_slack(lhs, rhs)});
  };
  auto xphi = [&](double x) { return x * phi.eval(x); };

  double t_half = T(0.5 * f).abs().integral();
  add("split", t_half, plus.t_g + minus.t_g);
  double gp = tr.g_plus.map(xphi).integral(), gm = tr.g_minus.map(xphi).integral();
  StepFunction h = f.abs().map([](double v) { return v / 2 + 1; });
  double hphi = h.map(xphi).integral();
  add("reassemble", kE3 * (gp + gm), 2 * kE3 * hphi);
  double fphi = f.abs().map(xphi).integral();
  add("truncate", 2 * kE3 * hphi, 2 * kE3 * fphi + 4 * kE3 * phi.eval(2.0));
  double t_full = T(f).abs().integral();
  add("homogeneity", t_full, 2 * t_half);
  add("conclusion", t_full, tr.A_phi + 4 * kE3 * fphi);
  return tr;
}

}  // namespace pseq
