#include "pseq/suites.hpp"

#include "pseq/averages.hpp"
#include "pseq/density.hpp"
#include "pseq/errors.hpp"
#include "pseq/extrapolation.hpp"
#include "pseq/series_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pseq {

namespace {

constexpr std::size_t kBruteForceLimit = 2'000'000;

std::string tag_k(std::uint64_t k, std::uint64_t u) {
  return "k=" + std::to_string(k) + " (u=" + std::to_string(u) + ")";
}

double ratio_value(const BigRational& r) {
  PrecisionScope scope(kBaseBits);
  return to_double(to_real(r));
}

// Sorted Delta ∩ [1, n) from explicit enumeration of S and every E_k.
std::optional<std::vector<BigInt>> brute_force_delta(const PerturbedSequence& delta, const BigInt& n) {
  const PerturbationPlan& plan = delta.plan();
  BigInt budget = plan.base->count(n);
  for (const auto& e : plan.insertions) budget += e.count_below(n);
  if (budget > kBruteForceLimit) return std::nullopt;
  std::vector<BigInt> all;
  plan.base->for_each_in(1, n, [&](const BigInt& x) {
    all.push_back(x);
    return true;
  });
  for (const auto& e : plan.insertions)
    for (BigInt x = e.first, i = 0; i < e.count && x < n; ++i, x += e.step) all.push_back(x);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"perturbation", "density", "sweepout", "series", "yano", "all"};
  return names;
}

bool suite_needs_plan(const std::string& suite) {
  return suite == "perturbation" || suite == "sweepout" || suite == "all";
}

CoverageResult residue_coverage(const Schedule& sched, std::uint64_t u) {
  CoverageResult out;
  BlockIndex b = sched.block(u);
  out.modulus = b.length;
  if (b.length <= (BigInt(1) << 24)) {
    out.exhaustive = true;
    const auto m = b.length.convert_to<std::uint64_t>();
    std::vector<bool> seen(m, false);
    std::uint64_t distinct = 0;
    for (BigInt k = b.start; k < b.end(); ++k) {
      auto r = mod_floor(k, b.length).convert_to<std::uint64_t>();
      if (!seen[r]) {
        seen[r] = true;
        ++distinct;
      }
    }
    out.complete = distinct == m;
  } else {
    // M(u) consecutive integers meet every class mod M(u) exactly once.
    out.complete = b.end() - b.start == b.length;
  }
  return out;
}

Report perturbation_suite(const PerturbedSequence& delta, const RunConfig& config) {
  (void)config;
  Report rep;
  rep.suite = "perturbation";
  const PerturbationPlan& plan = delta.plan();
  const Schedule& sched = *plan.schedule;
  const BaseSequence& base = *plan.base;

  BigInt previous_n = 0, predecessor_sum = 0;
  for (std::size_t i = 0; i < plan.choices.size(); ++i) {
    const IntervalChoice& c = plan.choices[i];
    const Progression& e = plan.insertions[i];
    ConstraintReport cr = check_constraints(base, sched, c.n, c.k, previous_n, predecessor_sum);
    int held = cr.growth + cr.capacity + cr.ratio + cr.doubling + cr.predecessor;
    rep.add("interval constraints " + tag_k(c.k, c.u), held, 5, cr.all());
    BigInt s = base.count(c.n);
    bool record_ok = s == c.base_count && c.n == c.record_m / 2 && c.modulus == sched.M(c.u) &&
                     c.residue == mod_floor(BigInt(c.k), c.modulus);
    rep.add("interval record " + tag_k(c.k, c.u), to_string(c.base_count), to_string(s), record_ok);
    bool e_ok = e.count == c.insert_count && e.first >= c.n && e.last() < 2 * c.n && e.step == c.modulus &&
                mod_floor(e.first, e.step) == c.residue && e.first == first_congruent(c.n, c.residue, c.modulus);
    rep.add("insertion set " + tag_k(c.k, c.u), to_string(e.count), to_string(c.insert_count), e_ok);
    previous_n = c.n;
    predecessor_sum += s;
  }

  // Checkpoint ratios n = n_{k+1} - 1 against 2R(u(k)).
  std::vector<std::pair<std::uint64_t, double>> block_max;  // (u, max ratio) in block order
  for (std::size_t i = 0; i + 1 < plan.choices.size(); ++i) {
    const IntervalChoice& c = plan.choices[i];
    BigInt n = plan.choices[i + 1].n - 1;
    BigRational r = perturbation_ratio(delta, n);
    bool pass;
    {
      PrecisionScope scope(std::max(bit_length(BigInt(boost::multiprecision::denominator(r))), 64u) + kBaseBits);
      pass = to_real(r) <= 2 * sched.R(c.u);
    }
    double R2;
    {
      PrecisionScope scope(kBaseBits);
      R2 = to_double(Real(2 * sched.R(c.u)));
    }
    double rv = ratio_value(r);
    rep.add("checkpoint ratio " + tag_k(c.k, c.u), rv, R2, pass);
    if (block_max.empty() || block_max.back().first != c.u) block_max.emplace_back(c.u, rv);
    else block_max.back().second = std::max(block_max.back().second, rv);
  }
  for (std::size_t i = 1; i < block_max.size(); ++i)
    rep.add("checkpoint ratios nonincreasing u=" + std::to_string(block_max[i - 1].first) + "->" +
                std::to_string(block_max[i].first),
            block_max[i].second, block_max[i - 1].second, block_max[i].second <= block_max[i - 1].second);

  // Size condition |Delta(2n_k)| <= 4|S(n_k)| per interval, reported.
  std::uint64_t size_ok = 0;
  for (const IntervalChoice& c : plan.choices)
    if (delta_count(delta, 2 * c.n) <= 4 * c.base_count) ++size_ok;
  rep.note("size condition |Delta(2n_k)| <= 4|S(n_k)| holds for " + std::to_string(size_ok) + " of " +
           std::to_string(plan.choices.size()) + " intervals");

  // Independent enumeration of Delta up to the horizon.
  BigInt horizon = plan.horizon();
  if (auto brute = brute_force_delta(delta, horizon)) {
    std::vector<BigInt> probes{1, horizon};
    for (const auto& c : plan.choices) {
      probes.push_back(c.n);
      probes.push_back(2 * c.n);
      probes.push_back(c.n + (c.n / 2));
    }
    std::vector<BigInt> streamed;
    delta.for_each_in(1, horizon, [&](const BigInt& x) {
      streamed.push_back(x);
      return true;
    });
    rep.add("merged stream equals enumeration", static_cast<double>(streamed.size()),
            static_cast<double>(brute->size()), streamed == *brute);
    for (const BigInt& n : probes) {
      auto expect = static_cast<std::uint64_t>(std::lower_bound(brute->begin(), brute->end(), n) - brute->begin());
      BigInt got = delta_count(delta, n);
      rep.add("delta_count oracle n=" + to_string(n), to_string(got), std::to_string(expect), got == expect);
      BigInt s = base.count(n);
      if (s > 0) {
        BigRational expect_ratio(BigInt(expect) - s, s);
        rep.add("perturbation_ratio oracle n=" + to_string(n), ratio_value(perturbation_ratio(delta, n)),
                ratio_value(expect_ratio), perturbation_ratio(delta, n) == expect_ratio);
      }
    }
  } else {
    rep.note("Delta up to 2n_{k_max} is too large to enumerate; oracle comparison skipped");
  }
  return rep;
}

Report density_suite(const RunConfig& config) {
  Report rep;
  rep.suite = "density";
  auto sched = make_schedule(config);
  for (std::uint64_t u = 1; u <= config.u_max; ++u) {
    BigInt M;
    try {
      M = sched->M(u);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceLimit) throw;
      rep.note("stopped at u=" + std::to_string(u) + ": " + e.what());
      break;
    }
    PrecisionScope scope(std::max(bit_length(M), 64u) + kBaseBits);
    Real D = witness_density(*sched, u);
    rep.add("D(Phi(F_u)) <= 1 u=" + std::to_string(u), to_string(D), 1, D <= 1);
    Real slack = 1 + 1 / to_real(M);
    rep.add("D(Phi(F_u)) <= 1 + 1/M(u) u=" + std::to_string(u), to_string(D), to_string(slack), D <= slack);
    if (M <= 1'000'000) {
      YoungFunctional Phi = sched->witness_functional();
      LatticeFunction f = sched->witness(u).transformed([&](const Real& x) { return Phi.apply(x); });
      BigInt N = 1000 * M;
      Real err = boost::multiprecision::abs(finite_density(f, N) - exact_density(f));
      Real bound = truncation_bound(f, N);
      rep.add("finite density N=1000*M(u) u=" + std::to_string(u), to_string(err), to_string(bound),
              err <= bound && err <= Real(1e-3));
    }
  }
  for (std::uint64_t u = 1; u <= 3; ++u) {
    try {
      CoverageResult cov = residue_coverage(*sched, u);
      rep.add(std::string("residue coverage ") + (cov.exhaustive ? "exhaustive" : "structural") +
                  " u=" + std::to_string(u),
              to_string(cov.modulus), to_string(cov.modulus), cov.complete);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceLimit) throw;
      rep.note("residue coverage stopped at u=" + std::to_string(u) + ": " + e.what());
      break;
    }
  }
  return rep;
}

Report sweepout_suite(const PerturbedSequence& delta, const RunConfig& config) {
  Report rep;
  rep.suite = "sweepout";
  const PerturbationPlan& plan = delta.plan();
  std::optional<std::uint64_t> smallest;
  for (std::uint64_t u = 1; u <= config.u_max; ++u) {
    if (!plan.covers_block(u)) {
      rep.note("plan does not cover block u=" + std::to_string(u));
      break;
    }
    if (auto bad = size_condition_violation(delta, u)) {
      rep.note("size condition fails in block u=" + std::to_string(u) + " at k=" + std::to_string(*bad));
      continue;
    }
    if (!smallest) smallest = u;
    if (plan.schedule->M(u) > (BigInt(1) << 24)) {
      rep.note("block u=" + std::to_string(u) + " is too large for an exhaustive shift scan");
      continue;
    }
    WitnessProfile profile = witness_profile(delta, u);
    SweepoutResult r = summarize(profile);
    PrecisionScope scope(kBaseBits);
    rep.add("sweep-out witness u=" + std::to_string(u), to_double(r.achieved), to_double(r.bound), r.pass);
    rep.add("per-k chain u=" + std::to_string(u), to_double(profile.chain_min), to_double(r.bound), r.chain_pass);
    Real share = density_of_shift_set(profile, r.bound);
    rep.add("shift set density at bound u=" + std::to_string(u), to_double(share), 1, share == 1);
  }
  rep.add("some covered block meets the size condition", smallest ? static_cast<double>(*smallest) : 0.0,
          static_cast<double>(config.u_max), smallest.has_value());
  if (smallest) rep.note("smallest u with the size condition: " + std::to_string(*smallest));
  return rep;
}

Report series_suite(const RunConfig& config) {
  Report rep;
  rep.suite = "series";
  auto sched = make_schedule(config);
  const std::uint64_t U = config.series_U;
  auto add_rows = [&](const SeriesReport& s, const std::string& suffix) {
    for (const SeriesRow& r : s.rows)
      rep.add("term u=" + std::to_string(r.u) + suffix, r.term, r.bound, r.pass);
  };
  switch (sched->variant()) {
    case Variant::TheoremA: {
      SeriesReport s = theorem_a_series(*sched, U);
      add_rows(s, "");
      rep.add("partial sum U=" + std::to_string(U), s.partial_sum, s.comparison_bound, s.comparison_pass);
      rep.note("tail beyond U is about " + std::to_string(s.extra("tail_estimate")));
      break;
    }
    case Variant::TheoremB:
    case Variant::Lemma14: {
      const bool lemma = sched->variant() == Variant::Lemma14;
      for (const Rational& p : p_grid(config.p_n_max)) {
        SeriesReport s = lemma ? lemma_series(*sched, p, U) : theorem_b_series(*sched, p, U);
        std::string sp = " p=" + to_string(p);
        if (lemma) {
          rep.add("per-term cancellation" + sp, static_cast<double>(std::count_if(s.rows.begin(), s.rows.end(),
                                                                                  [](const SeriesRow& r) { return r.pass; })),
                  static_cast<double>(s.rows.size()), s.terms_pass());
        }
        rep.add("partial sum bound" + sp, s.partial_sum, s.comparison_bound, s.comparison_pass);
        for (const auto& [name, value] : s.flags) {
          if (name == "polynomial_growth") continue;
          rep.add(name + sp, value ? 1 : 0, 1, value);
        }
        if (!lemma && !s.flag("polynomial_growth")) {
          for (const FamilyCheck& f : theorem_b_family(*sched, p, U))
            if (f.applicable) rep.add("family n=" + std::to_string(f.n) + sp, s.partial_sum, f.bound, f.pass);
        }
      }
      break;
    }
  }
  return rep;
}

Report yano_suite(const RunConfig& config) {
  Report rep;
  rep.suite = "yano";
  const Gauge& phi = config.yano_phi;
  SqrtDomination dom = sqrt_domination(phi);
  rep.add("phi(x) <= c sqrt(x)", dom.c, dom.c, dom.ok);
  if (!dom.ok) return rep;
  double A = constant_A_phi(phi);
  rep.add("A_phi >= 8e^3", A, 8 * std::exp(3.0), A >= 8 * std::exp(3.0));
  rep.note("a_phi = " + std::to_string(small_measure_constant(phi)) + ", A_phi = " + std::to_string(A));

  std::mt19937_64 rng(config.seed);
  std::vector<Rational> grid = p_grid(config.p_n_max);
  const std::vector<OperatorHandle> ops{OperatorHandle::identity(), OperatorHandle::dyadic_average(10)};
  for (const OperatorHandle& T : ops) {
    std::mt19937_64 audit_rng(config.seed + 1);
    OperatorAudit audit = audit_operator(T, audit_rng);
    rep.add("operator audit " + T.name, static_cast<double>(audit.samples), static_cast<double>(audit.samples),
            audit.positive && audit.sublinear);
  }
  for (unsigned i = 0; i < config.yano_samples; ++i) {
    StepFunction f = random_step_function(rng);
    for (const OperatorHandle& T : ops) {
      std::string tag = T.name + " f#" + std::to_string(i);
      HypothesisReport h = check_hypothesis(T, f, phi, grid);
      double worst = 0;
      for (const auto& row : h.rows) worst = std::max(worst, row.rhs > 0 ? row.lhs / row.rhs : 0.0);
      rep.add("hypothesis " + tag, worst, 1, h.all_pass());
      DecompositionTrace t = trace_conclusion(T, f, phi);
      const TraceStep& c = t.step("conclusion");
      auto fail = t.first_failure();
      rep.add("trace " + tag + (fail ? " failed at " + fail->name : std::string()), c.lhs, c.rhs, t.pass());
    }
  }
  return rep;
}

Report run_suite(const std::string& suite, const RunConfig& config, const std::optional<PerturbationPlan>& plan) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error(ErrorKind::Config, "unknown suite '" + suite + "'");
  if (suite_needs_plan(suite) && !plan) throw Error(ErrorKind::MissingPlan, "suite '" + suite + "' needs a plan");
  std::optional<PerturbedSequence> delta;
  if (plan) delta.emplace(*plan);
  if (suite == "perturbation") return perturbation_suite(*delta, config);
  if (suite == "density") return density_suite(config);
  if (suite == "sweepout") return sweepout_suite(*delta, config);
  if (suite == "series") return series_suite(config);
  if (suite == "yano") return yano_suite(config);
  Report all;
  all.suite = "all";
  all.append(perturbation_suite(*delta, config), "perturbation: ");
  all.append(density_suite(config), "density: ");
  all.append(sweepout_suite(*delta, config), "sweepout: ");
  all.append(series_suite(config), "series: ");
  all.append(yano_suite(config), "yano: ");
  return all;
}

}  // namespace pseq
