#include "pseq/construction.hpp"

#include "pseq/errors.hpp"

#include <algorithm>

namespace pseq {

bool Progression::contains(const BigInt& x) const {
  if (count <= 0 || x < first || x >= end()) return false;
  return mod_floor(x - first, step) == 0;
}

BigInt Progression::count_below(const BigInt& n) const {
  if (count <= 0 || n <= first) return 0;
  if (n > last()) return count;
  return floor_div(n - 1 - first, step) + 1;
}

std::string ConstraintReport::first_failure() const {
  if (!growth) return "growth n_k > 2 n_{k-1}";
  if (!capacity) return "capacity n_k > R |S(n_k)| M";
  if (!ratio) return "ratio |S(n_k)|/n_k <= 1/(R M)";
  if (!doubling) return "doubling |S(2n_k)| <= 3 |S(n_k)|";
  if (!predecessor) return "predecessor R |S(n_k)| > sum |S(n_j)|";
  return {};
}

namespace {

struct Evaluation {
  ConstraintReport report;
  BigInt s;
  BigInt insert_count;
};

// R(u) at a working precision rounded up to a multiple of 1024 bits.
class RCache {
 public:
  const Real& get(const Schedule& sched, std::uint64_t u, unsigned bits) {
    if (u != u_ || bits != bits_) {
      R_ = sched.R(u);
      u_ = u;
      bits_ = bits;
    }
    return R_;
  }

 private:
  std::uint64_t u_ = 0;
  unsigned bits_ = 0;
  Real R_;
};

unsigned working_bits(const BigInt& a, const BigInt& b) {
  unsigned bits = std::max(bit_length(a), bit_length(b)) + kBaseBits;
  return (bits + 1023) / 1024 * 1024;
}

Evaluation evaluate(const BaseSequence& base, const Schedule& sched, const BigInt& n, std::uint64_t u,
                    const BigInt& previous_n, const BigInt& predecessor_sum, RCache& cache) {
  Evaluation ev;
  ev.s = base.count(n);
  BigInt M = sched.M(u);
  ConstraintReport& r = ev.report;
  r.growth = n > 2 * previous_n;
  r.doubling = base.count(2 * n) <= 3 * ev.s;
  {
    unsigned bits = working_bits(n, predecessor_sum);
    PrecisionScope scope(bits);
    const Real& R = cache.get(sched, u, bits);
    Real Rs = R * to_real(ev.s);
    ev.insert_count = ceil_of(Rs);
    Real load = Rs * to_real(M);
    r.capacity = to_real(n) > load && n >= ev.insert_count * M;
    r.ratio = load <= to_real(n);
    r.predecessor = Rs > to_real(predecessor_sum);
  }
  if (ev.insert_count < 1) r.capacity = false;
  return ev;
}

}  // namespace

ConstraintReport check_constraints(const BaseSequence& base, const Schedule& sched, const BigInt& n, std::uint64_t k,
                                   const BigInt& previous_n, const BigInt& predecessor_sum) {
  RCache cache;
  return evaluate(base, sched, n, sched.block_of(BigInt(k)).u, previous_n, predecessor_sum, cache).report;
}

std::vector<IntervalChoice> select_intervals(const BaseSequence& base, const Schedule& sched, std::uint64_t k_max,
                                             const SelectionLimits& limits) {
  if (k_max > limits.max_k)
    throw Error(ErrorKind::SearchBudgetExhausted,
                "k_max = " + std::to_string(k_max) + " exceeds the selection cap " + std::to_string(limits.max_k));
  if (!base.zero_density())
    throw Error(ErrorKind::PreconditionViolation, base.name() + " is not declared zero-density");

  std::vector<IntervalChoice> out;
  BigInt previous_n = 0, predecessor_sum = 0;
  BigInt last_i = 0;
  std::optional<std::pair<BigInt, BigInt>> prefix_min;  // (count, m) for record tracking in scans
  RCache cache;

  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const std::uint64_t u = sched.block_of(BigInt(k)).u;
    std::uint64_t evaluated = 0;
    std::string last_failure = "none";

    auto candidate_m = [&](const BigInt& i) {
      if (++evaluated > limits.search.max_candidates)
        throw Error(ErrorKind::SearchBudgetExhausted, "interval search for k = " + std::to_string(k) +
                                                          " exceeded the candidate budget; last failing constraint: " +
                                                          last_failure);
      BigInt m = base.element(i + 1);
      if (bit_length(m) > limits.search.max_bits)
        throw Error(ErrorKind::SearchBudgetExhausted, "interval search for k = " + std::to_string(k) +
                                                          " exceeded the size ceiling; last failing constraint: " +
                                                          last_failure);
      return m;
    };
    auto test = [&](const BigInt& i, Evaluation& ev) {
      BigInt m = candidate_m(i);
      ev = evaluate(base, sched, m / 2, u, previous_n, predecessor_sum, cache);
      if (!ev.report.all()) last_failure = ev.report.first_failure();
      return ev.report.all();
    };

    BigInt chosen;
    Evaluation ev;
    if (base.record_ratios_monotone()) {
      BigInt lo = last_i, step = last_i > 0 ? last_i : BigInt(1), hi = last_i + step;
      while (!test(hi, ev)) {
        lo = hi;
        step *= 2;
        hi = lo + step;
      }
      // Narrow to the smallest passing stretch up to a relative tolerance of 2^-32.
      while (hi - lo > 1 && (hi - lo) > (hi >> 32)) {
        BigInt mid = (lo + hi) / 2;
        Evaluation probe;
        if (test(mid, probe)) hi = mid; else lo = mid;
      }
      chosen = hi;
      test(chosen, ev);
    } else {
      BigInt i = base.next_record_candidate(last_i);
      for (;;) {
        BigInt m = candidate_m(i);
        bool is_min = !prefix_min || i * prefix_min->second <= prefix_min->first * m;
        if (is_min) {
          prefix_min = std::make_pair(i, m);
          ev = evaluate(base, sched, m / 2, u, previous_n, predecessor_sum, cache);
          if (ev.report.all()) break;
          last_failure = ev.report.first_failure();
        }
        i = base.next_record_candidate(i);
      }
      chosen = i;
    }

    IntervalChoice c;
    c.k = k;
    c.u = u;
    c.record_m = base.element(chosen + 1);
    c.n = c.record_m / 2;
    c.modulus = sched.M(u);
    c.residue = mod_floor(BigInt(k), c.modulus);
    c.base_count = ev.s;
    c.insert_count = ev.insert_count;
    out.push_back(c);

    previous_n = c.n;
    predecessor_sum += c.base_count;
    last_i = chosen;
  }
  return out;
}

Progression insertion_set(const IntervalChoice& c) {
  return {first_congruent(c.n, c.residue, c.modulus), c.modulus, c.insert_count};
}

bool PerturbationPlan::covers_block(std::uint64_t u) const {
  if (!schedule || choices.empty()) return false;
  BlockIndex b = schedule->block(u);
  return b.end() - 1 <= BigInt(k_max());
}

PerturbationPlan build_plan(std::shared_ptr<const BaseSequence> base, std::shared_ptr<const Schedule> sched,
                            std::uint64_t k_max, const SelectionLimits& limits) {
  PerturbationPlan plan;
  plan.choices = select_intervals(*base, *sched, k_max, limits);
  for (const auto& c : plan.choices) plan.insertions.push_back(insertion_set(c));
  plan.base = std::move(base);
  plan.schedule = std::move(sched);
  return plan;
}

PerturbedSequence::PerturbedSequence(PerturbationPlan plan) : plan_(std::move(plan)) {
  if (!plan_.base) throw Error(ErrorKind::MissingPlan, "perturbation plan has no base sequence");
  if (plan_.insertions.size() != plan_.choices.size())
    throw Error(ErrorKind::InvalidArgument, "insertion sets do not match interval choices");
  for (std::size_t i = 0; i < plan_.insertions.size(); ++i) {
    const Progression& e = plan_.insertions[i];
    const IntervalChoice& c = plan_.choices[i];
    if (e.count != c.insert_count || e.first < c.n || (e.count > 0 && e.last() >= 2 * c.n) ||
        mod_floor(e.first, e.step) != mod_floor(c.residue, c.modulus) || e.step != c.modulus)
      throw Error(ErrorKind::InvalidArgument, "insertion set E_" + std::to_string(c.k) + " violates its interval");
    if (i > 0 && c.n < 2 * plan_.choices[i - 1].n)
      throw Error(ErrorKind::InvalidArgument, "intervals overlap at k = " + std::to_string(c.k));
    overlaps_.push_back(e.count > 0 ? plan_.base->count_in_residue(e.first, e.end(), e.first, e.step) : BigInt(0));
  }
}

BigInt PerturbedSequence::added_count(const BigInt& n) const {
  BigInt total = 0;
  for (std::size_t i = 0; i < plan_.insertions.size(); ++i) {
    const Progression& e = plan_.insertions[i];
    if (n <= e.first) break;
    if (n > e.last()) {
      total += e.count - overlaps_[i];
    } else {
      total += e.count_below(n) - plan_.base->count_in_residue(e.first, n, e.first, e.step);
    }
  }
  return total;
}

BigInt PerturbedSequence::count(const BigInt& n) const { return plan_.base->count(n) + added_count(n); }

BigInt PerturbedSequence::count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r,
                                           const BigInt& m) const {
  BigInt total = plan_.base->count_in_residue(lo, hi, r, m);
  for (const Progression& e : plan_.insertions) {
    if (e.count <= 0 || e.end() <= lo) continue;
    if (e.first >= hi) break;
    BigInt rr, mm;
    if (!crt(e.first, e.step, r, m, rr, mm)) continue;
    BigInt a = std::max(lo, e.first), b = std::min(hi, e.end());
    total += count_congruent(a, b, rr, mm) - plan_.base->count_in_residue(a, b, rr, mm);
  }
  return total;
}

bool PerturbedSequence::contains(const BigInt& x) const {
  if (plan_.base->contains(x)) return true;
  auto it = std::upper_bound(plan_.choices.begin(), plan_.choices.end(), x,
                             [](const BigInt& v, const IntervalChoice& c) { return v < c.n; });
  if (it == plan_.choices.begin()) return false;
  return plan_.insertions[static_cast<std::size_t>(it - plan_.choices.begin()) - 1].contains(x);
}

void PerturbedSequence::for_each_in(const BigInt& lo, const BigInt& hi,
                                    const std::function<bool(const BigInt&)>& fn) const {
  std::size_t idx = 0;
  BigInt next_e;
  bool have_e = false;
  auto advance_to = [&](const BigInt& from) {
    // First insertion element >= from, scanning forward from idx.
    have_e = false;
    for (; idx < plan_.insertions.size(); ++idx) {
      const Progression& e = plan_.insertions[idx];
      if (e.count <= 0 || e.last() < from) continue;
      next_e = from <= e.first ? e.first : e.first + e.step * (floor_div(from - e.first + e.step - 1, e.step));
      have_e = true;
      return;
    }
  };
  advance_to(lo);

  bool stopped = false;
  plan_.base->for_each_in(lo, hi, [&](const BigInt& b) {
    while (have_e && next_e < b) {
      if (!fn(next_e)) { stopped = true; return false; }
      advance_to(next_e + 1);
    }
    if (have_e && next_e == b) advance_to(next_e + 1);
    if (!fn(b)) { stopped = true; return false; }
    return true;
  });
  if (stopped) return;
  while (have_e && next_e < hi) {
    if (!fn(next_e)) return;
    advance_to(next_e + 1);
  }
}

namespace {

std::uint64_t check_profile_modulus(std::uint64_t m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "profile modulus must be positive");
  if (m > (std::uint64_t{1} << 24)) throw Error(ErrorKind::ResourceLimit, "profile modulus exceeds 2^24");
  return m;
}

}  // namespace

std::vector<BigInt> PerturbedSequence::base_profile(const BigInt& n, std::uint64_t m) const {
  check_profile_modulus(m);
  return plan_.base->residue_profile(1, n, m);
}

std::vector<BigInt> PerturbedSequence::added_profile(std::size_t index, std::uint64_t m) const {
  check_profile_modulus(m);
  const Progression& e = plan_.insertions.at(index);
  std::vector<BigInt> out(m);
  if (e.count <= 0) return out;
  BigInt bm(m);
  BigInt period = bm / gcd(e.step, bm);  // residues of first + t*step repeat with this period in t
  BigInt terms = std::min(period, e.count);
  for (BigInt t = 0; t < terms; ++t) {
    BigInt x = e.first + t * e.step;
    auto r = mod_floor(x, bm).convert_to<std::uint64_t>();
    // indices t' in [0, count) with t' = t mod period
    out[r] += floor_div(e.count - 1 - t, period) + 1;
  }
  for (std::uint64_t r = 0; r < m; ++r) {
    if (out[r] == 0) continue;
    BigInt rr, mm;
    if (crt(e.first, e.step, BigInt(r), bm, rr, mm)) out[r] -= plan_.base->count_in_residue(e.first, e.end(), rr, mm);
  }
  return out;
}

std::vector<BigInt> PerturbedSequence::residue_profile(const BigInt& n, std::uint64_t m) const {
  std::vector<BigInt> out = base_profile(n, m);
  for (std::size_t i = 0; i < plan_.insertions.size(); ++i) {
    const Progression& e = plan_.insertions[i];
    if (e.count <= 0) continue;
    if (n <= e.first) break;
    if (n > e.last()) {
      auto add = added_profile(i, m);
      for (std::uint64_t r = 0; r < m; ++r) out[r] += add[r];
    } else {
      for (std::uint64_t r = 0; r < m; ++r) {
        BigInt rr, mm;
        if (!crt(e.first, e.step, BigInt(r), BigInt(m), rr, mm)) continue;
        out[r] += count_congruent(e.first, n, rr, mm) - plan_.base->count_in_residue(e.first, n, rr, mm);
      }
    }
  }
  return out;
}

BigInt delta_count(const PerturbedSequence& p, const BigInt& n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "delta_count needs n >= 1");
  return p.count(n);
}

BigRational perturbation_ratio(const PerturbedSequence& p, const BigInt& n) {
  BigInt s = p.base().count(n);
  if (s == 0) throw Error(ErrorKind::DivisionByZero, "|S(n)| = 0 at n = " + to_string(n));
  return BigRational(p.added_count(n), s);
}

}  // namespace pseq
