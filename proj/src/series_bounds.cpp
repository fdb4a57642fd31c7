#include "pseq/series_bounds.hpp"

#include "pseq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pseq {

namespace mp = boost::multiprecision;

bool SeriesReport::terms_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const SeriesRow& r) { return r.pass; });
}

bool SeriesReport::all_pass() const { return terms_pass() && comparison_pass; }

double SeriesReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return v;
  throw Error(ErrorKind::InvalidArgument, "series report has no value '" + key + "'");
}

bool SeriesReport::flag(const std::string& key) const {
  for (const auto& [k, v] : flags)
    if (k == key) return v;
  throw Error(ErrorKind::InvalidArgument, "series report has no flag '" + key + "'");
}

std::vector<Rational> p_grid(unsigned count) {
  std::vector<Rational> out;
  for (unsigned n = 1; n <= count; ++n) out.push_back({static_cast<std::int64_t>(n) + 1, static_cast<std::int64_t>(n)});
  return out;
}

double polylog_tail(double K, unsigned k) {
  if (!(K > 0)) throw Error(ErrorKind::InvalidArgument, "tail rate K must be positive");
  const double x = std::exp2(-K);
  if (k == 1) return x / ((1 - x) * (1 - x));
  double total = 0;
  for (std::uint64_t r = 1;; ++r) {
    double term = std::pow(static_cast<double>(r), k) * std::pow(x, static_cast<double>(r));
    total += term;
    if (static_cast<double>(r) * K > 64 + k * std::log2(static_cast<double>(r) + 1) && term < total * 1e-18) break;
    if (r > 100'000'000) throw Error(ErrorKind::ResourceLimit, "polylog tail did not settle");
  }
  return total;
}

namespace {

unsigned exponent_power(const Schedule& sched) {
  switch (sched.variant()) {
    case Variant::TheoremB: return 4;
    case Variant::Lemma14: return sched.spec().k + 1;
    case Variant::TheoremA: break;
  }
  throw Error(ErrorKind::PreconditionViolation, "g(u) is defined for theorem-b and lemma-14 only");
}

// g^{-1}(y) = phi(2^y)^{1/e} since g(u) = log2 phi^{-1}(u^e).
Real g_inverse(const Schedule& sched, const Real& y) {
  Real x = sched.spec().phi.eval(real_exp2(y));
  return real_pow(x, Rational{1, exponent_power(sched)});
}

Real phi_at_e_power(const Schedule& sched, const Real& pm1) {
  return sched.spec().phi.eval(mp::exp(Real(1) / pm1));
}

}  // namespace

GrowthFit fit_growth(const Schedule& sched, std::uint64_t U) {
  if (U < 1) throw Error(ErrorKind::InvalidArgument, "series range needs U >= 1");
  PrecisionScope scope(kBaseBits);
  std::vector<double> L(U + 1);  // log2 g(u)
  for (std::uint64_t u = 1; u <= U; ++u) {
    Real g = sched.g(u);
    L[u] = g > 0 ? to_double(real_log2(g)) : -INFINITY;
  }
  GrowthFit fit;
  std::uint64_t a = std::max<std::uint64_t>(1, U / 4), b = std::max<std::uint64_t>(1, U / 2);
  auto slope = [&](std::uint64_t lo, std::uint64_t hi) {
    return hi == lo ? NAN : (L[hi] - L[lo]) / (std::log2(static_cast<double>(hi)) - std::log2(static_cast<double>(lo)));
  };
  double s1 = slope(a, b), s2 = slope(b, U);
  if (!std::isfinite(s2)) s2 = slope(1, U);
  if (!std::isfinite(s1)) s1 = s2;
  fit.n = s2;
  fit.polynomial = std::isfinite(s2) && s2 > 1 && std::fabs(s2 - s1) <= 0.05 * std::max(1.0, std::fabs(s2));
  if (std::isfinite(fit.n)) {
    double lo = INFINITY, hi = 0;
    for (std::uint64_t u = 1; u <= U; ++u) {
      double r = std::exp2(L[u] - fit.n * std::log2(static_cast<double>(u)));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    fit.c = lo * (1 - 1e-9);
    fit.C = hi;
  }
  return fit;
}

SeriesReport theorem_a_series(const Schedule& sched, std::uint64_t U) {
  if (sched.variant() != Variant::TheoremA) throw Error(ErrorKind::PreconditionViolation, "theorem-a schedule required");
  if (U < 1) throw Error(ErrorKind::InvalidArgument, "series range needs U >= 1");
  SeriesReport rep;
  rep.variant = Variant::TheoremA;
  rep.U = U;
  const Rational q = sched.spec().q;
  Real sum = 0, bound_sum = 0;
  for (std::uint64_t u = 1; u <= U; ++u) {
    Real v, mval;
    {
      PrecisionScope probe(kBaseBits);
      v = sched.witness_value(u);
    }
    unsigned bits = static_cast<unsigned>(std::max(0.0, to_double(real_log2(v)) * q.value())) + 2 * kBaseBits;
    PrecisionScope scope(bits);
    v = sched.witness_value(u);
    Real vq = real_pow(v, q);
    Real ur = Real(u);
    mval = to_real(floor_of(vq / (ur * ur * ur)));
    Real R = sched.R(u);
    Real term = mval * real_pow(R, q);
    Real bound = 1 / (ur * ur) + ur / vq;
    rep.rows.push_back({u, to_double(term), to_double(bound), term <= bound});
    sum += term;
    bound_sum += bound;
  }
  rep.partial_sum = to_double(sum);
  rep.comparison_bound = to_double(bound_sum);
  rep.comparison_pass = sum <= bound_sum;
  // sum_{u > U} 1/u^2 < 1/U dominates the unsummed tail of the bound.
  rep.extras.emplace_back("tail_estimate", 1.0 / static_cast<double>(U));
  rep.extras.emplace_back("basel_bound", 2 * M_PI * M_PI / 6);
  return rep;
}

SeriesReport theorem_b_series(const Schedule& sched, const Rational& p, std::uint64_t U) {
  if (sched.variant() != Variant::TheoremB) throw Error(ErrorKind::PreconditionViolation, "theorem-b schedule required");
  if (!(p.num > p.den && p.num <= 2 * p.den)) throw Error(ErrorKind::InvalidArgument, "p must lie in (1, 2]");
  SeriesReport rep;
  rep.variant = Variant::TheoremB;
  rep.p = p.value();
  rep.U = U;
  PrecisionScope scope(kBaseBits);
  Real pm1 = p.real() - 1;
  std::vector<Real> terms(U + 1);
  Real sum = 0;
  for (std::uint64_t u = 1; u <= U; ++u) {
    terms[u] = Real(u) * real_exp2(-sched.g(u) * pm1);
    sum += terms[u];
    rep.rows.push_back({u, to_double(terms[u]), static_cast<double>(u), terms[u] <= Real(u)});
  }
  rep.partial_sum = to_double(sum);
  Real phi_e = phi_at_e_power(sched, pm1);
  rep.extras.emplace_back("phi_e", to_double(phi_e));

  GrowthFit fit = fit_growth(sched, U);
  rep.extras.emplace_back("fit_n", fit.n);
  rep.extras.emplace_back("fit_c", fit.c);
  rep.extras.emplace_back("fit_C", fit.C);
  rep.flags.emplace_back("polynomial_growth", fit.polynomial);

  if (fit.polynomial) {
    double alpha = fit.n / (fit.n - 1);
    Real N = g_inverse(sched, 1 / pm1);
    Real N_alpha = mp::pow(N, Real(alpha));
    double K = fit.c / fit.C;
    double A = polylog_tail(K, 1);
    Real head_bound = N_alpha * N_alpha;
    Real tail = 0;
    for (std::uint64_t u = 1; u <= U; ++u)
      if (Real(u) > N_alpha) tail += terms[u];
    rep.extras.emplace_back("alpha", alpha);
    rep.extras.emplace_back("N", to_double(N));
    rep.extras.emplace_back("K", K);
    rep.extras.emplace_back("A", A);
    rep.extras.emplace_back("tail", to_double(tail));
    rep.comparison_bound = to_double(head_bound + A);
    rep.comparison_pass = sum <= head_bound + A;
    rep.flags.emplace_back("tail_within_A", tail <= A);
    rep.flags.emplace_back("phi_target", sum <= phi_e + A);
    Real feed = 2 * mp::pow(sum, 1 / p.real());
    rep.extras.emplace_back("yano_feed", to_double(feed));
    rep.flags.emplace_back("yano_feed", feed <= phi_e + 2 * (A + 1));
  } else {
    bool any = false;
    double best = INFINITY;
    for (const FamilyCheck& f : theorem_b_family(sched, p, U)) {
      if (!f.applicable) continue;
      any = true;
      if (f.pass) best = std::min(best, f.bound);
    }
    rep.comparison_bound = best;
    rep.comparison_pass = any && std::isfinite(best);
  }
  return rep;
}

std::vector<FamilyCheck> theorem_b_family(const Schedule& sched, const Rational& p, std::uint64_t U) {
  PrecisionScope scope(kBaseBits);
  Real pm1 = p.real() - 1;
  Real N = g_inverse(sched, 1 / pm1);
  std::vector<Real> terms(U + 1), g(U + 1);
  Real sum = 0;
  for (std::uint64_t u = 1; u <= U; ++u) {
    g[u] = sched.g(u);
    terms[u] = Real(u) * real_exp2(-g[u] * pm1);
    sum += terms[u];
  }
  std::vector<FamilyCheck> out;
  for (unsigned n : {2u, 4u, 8u}) {
    FamilyCheck f;
    f.n = n;
    f.alpha = static_cast<double>(n) / (n - 1);
    Real N_alpha = mp::pow(N, Real(f.alpha));
    Real tail = 0;
    f.applicable = true;
    for (std::uint64_t u = 1; u <= U; ++u) {
      if (!(Real(u) > N_alpha)) continue;
      Real un = mp::pow(Real(u), n);
      if (g[u] < un) f.applicable = false;
      tail += Real(u) * real_exp2(-un * pm1);
    }
    Real bound = N_alpha * N_alpha + tail;
    f.bound = to_double(bound);
    f.pass = f.applicable && sum <= bound;
    out.push_back(f);
  }
  return out;
}

SeriesReport lemma_series(const Schedule& sched, const Rational& p, std::uint64_t U) {
  if (sched.variant() != Variant::Lemma14) throw Error(ErrorKind::PreconditionViolation, "lemma-14 schedule required");
  if (!(p.num > p.den && p.num <= 2 * p.den)) throw Error(ErrorKind::InvalidArgument, "p must lie in (1, 2]");
  const unsigned k = sched.spec().k;
  const Gauge& psi = *sched.spec().psi;
  SeriesReport rep;
  rep.variant = Variant::Lemma14;
  rep.p = p.value();
  rep.U = U;
  PrecisionScope scope(kBaseBits);
  Real pm1 = p.real() - 1;
  std::vector<Real> terms(U + 1);
  Real sum = 0;
  for (std::uint64_t u = 1; u <= U; ++u) {
    Real g = sched.g(u);
    Real uk = mp::pow(Real(u), k);
    terms[u] = uk * real_exp2(-g * pm1);
    sum += terms[u];
    Real lhs;
    {
      double gd = to_double(g);
      PrecisionScope wide(static_cast<unsigned>(std::min(std::max(gd, 0.0), 1e6)) + 2 * kBaseBits);
      Real two_g = real_exp2(sched.g(u));
      Real m = two_g * psi.eval(two_g);
      if (gd < 1e6) m = to_real(floor_of(m));
      lhs = m * real_pow(2 * sched.R(u), p);
    }
    Real rhs = 4 * terms[u];
    rep.rows.push_back({u, to_double(lhs), to_double(rhs), lhs <= rhs});
  }
  rep.partial_sum = to_double(sum);
  Real phi_e = phi_at_e_power(sched, pm1);
  rep.extras.emplace_back("phi_e", to_double(phi_e));

  GrowthFit fit = fit_growth(sched, U);
  rep.extras.emplace_back("fit_n", fit.n);
  rep.extras.emplace_back("fit_c", fit.c);
  rep.extras.emplace_back("fit_C", fit.C);
  rep.flags.emplace_back("polynomial_growth", fit.polynomial);
  if (!fit.polynomial) {
    rep.comparison_pass = false;
    return rep;
  }
  double alpha = fit.n / (fit.n - 1);
  Real N = g_inverse(sched, 1 / pm1);
  Real N_alpha = mp::pow(N, Real(alpha));
  double K = fit.c / fit.C;
  double A = polylog_tail(K, k);
  Real head_bound = mp::pow(N, Real((k + 1) * alpha));
  Real tail = 0;
  for (std::uint64_t u = 1; u <= U; ++u)
    if (Real(u) > N_alpha) tail += terms[u];
  rep.extras.emplace_back("alpha", alpha);
  rep.extras.emplace_back("N", to_double(N));
  rep.extras.emplace_back("K", K);
  rep.extras.emplace_back("A", A);
  rep.extras.emplace_back("tail", to_double(tail));
  rep.comparison_bound = to_double(head_bound + A);
  rep.comparison_pass = sum <= head_bound + A;
  rep.flags.emplace_back("tail_within_A", tail <= A);
  rep.flags.emplace_back("phi_target", sum <= phi_e + A);
  return rep;
}

}  // namespace pseq
