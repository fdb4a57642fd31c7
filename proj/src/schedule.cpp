#include "pseq/schedule.hpp"

#include "pseq/errors.hpp"

#include <cmath>

namespace pseq {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::TheoremA: return "theorem-a";
    case Variant::TheoremB: return "theorem-b";
    case Variant::Lemma14: return "lemma-14";
  }
  return "?";
}

Variant parse_variant(const std::string& text) {
  if (text == "theorem-a") return Variant::TheoremA;
  if (text == "theorem-b") return Variant::TheoremB;
  if (text == "lemma-14") return Variant::Lemma14;
  throw Error(ErrorKind::Config, "unknown schedule variant '" + text + "'");
}

Schedule::Schedule(ScheduleSpec spec, ScheduleCaps caps) : spec_(std::move(spec)), caps_(caps) {
  if (!spec_.phi.admissible()) throw Error(ErrorKind::Config, "schedule gauge must be strictly increasing and unbounded");
  if (spec_.variant == Variant::TheoremA && !(spec_.q.num > spec_.q.den))
    throw Error(ErrorKind::Config, "theorem-a needs q > 1");
  if (spec_.variant == Variant::Lemma14) {
    if (!spec_.psi) throw Error(ErrorKind::Config, "lemma-14 needs a psi gauge");
    if (!spec_.psi->admissible()) throw Error(ErrorKind::Config, "psi must be strictly increasing and unbounded");
    if (spec_.k < 1) throw Error(ErrorKind::Config, "lemma-14 needs k >= 1");
  }
}

std::string Schedule::describe() const {
  std::string s = to_string(spec_.variant) + " phi=" + spec_.phi.describe();
  if (spec_.variant == Variant::TheoremA) s += " q=" + to_string(spec_.q);
  if (spec_.variant == Variant::Lemma14) s += " psi=" + spec_.psi->describe() + " k=" + std::to_string(spec_.k);
  return s;
}

namespace {

Real upow(std::uint64_t u, unsigned e) { return real_pow(Real(u), Rational{static_cast<std::int64_t>(e), 1}); }

}  // namespace

Real Schedule::g(std::uint64_t u) const {
  if (u < 1) throw Error(ErrorKind::InvalidArgument, "block index u starts at 1");
  switch (spec_.variant) {
    case Variant::TheoremB: return spec_.phi.log2_inverse(upow(u, 4));
    case Variant::Lemma14: return spec_.phi.log2_inverse(upow(u, spec_.k + 1));
    case Variant::TheoremA: break;
  }
  throw Error(ErrorKind::PreconditionViolation, "g(u) is defined for theorem-b and lemma-14 only");
}

Real Schedule::witness_value(std::uint64_t u) const {
  if (u < 1) throw Error(ErrorKind::InvalidArgument, "block index u starts at 1");
  if (spec_.variant == Variant::TheoremA) return spec_.phi.inverse(upow(u, 3));
  return real_exp2(g(u));
}

Real Schedule::exact_M_value(std::uint64_t u) const {
  // Size the working precision from the magnitude so the floor is exact.
  Real log_size;
  {
    PrecisionScope base(kBaseBits);
    switch (spec_.variant) {
      case Variant::TheoremA: log_size = spec_.phi.log2_inverse(upow(u, 3)) * spec_.q.real(); break;
      default: log_size = g(u) + 8; break;
    }
  }
  double bits = to_double(log_size);
  if (!(bits < caps_.max_block_bits + 64.0))
    throw Error(ErrorKind::ResourceLimit, "M(" + std::to_string(u) + ") exceeds 2^" +
                                              std::to_string(caps_.max_block_bits));
  PrecisionScope scope(static_cast<unsigned>(std::max(0.0, bits)) + 128);
  switch (spec_.variant) {
    case Variant::TheoremA: {
      Real v = witness_value(u);
      return real_pow(v, spec_.q) / upow(u, 3);
    }
    case Variant::TheoremB: return real_exp2(g(u));
    case Variant::Lemma14: {
      Real two_g = real_exp2(g(u));
      return two_g * spec_.psi->eval(two_g);
    }
  }
  return Real(0);
}

BigInt Schedule::M(std::uint64_t u) const {
  if (u < 1) throw Error(ErrorKind::InvalidArgument, "block index u starts at 1");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (u <= m_cache_.size()) return m_cache_[u - 1];
  }
  extend_prefix(u);
  std::lock_guard<std::mutex> lock(mutex_);
  return m_cache_[u - 1];
}

void Schedule::extend_prefix(std::uint64_t u) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (m_cache_.size() < u) {
    std::uint64_t next = m_cache_.size() + 1;
    BigInt m;
    {
      Real value = exact_M_value(next);
      PrecisionScope scope(PrecisionScope::current_bits());
      m = floor_of(value);
    }
    if (m < 1)
      throw Error(ErrorKind::PreconditionViolation,
                  "M(" + std::to_string(next) + ") = 0; the gauge yields an empty block");
    if (bit_length(m) > caps_.max_block_bits)
      throw Error(ErrorKind::ResourceLimit, "M(" + std::to_string(next) + ") exceeds 2^" +
                                                std::to_string(caps_.max_block_bits));
    BigInt start = prefix_cache_.empty() ? BigInt(0) : prefix_cache_.back() + m_cache_.back();
    m_cache_.push_back(m);
    prefix_cache_.push_back(start);
  }
}

Real Schedule::R(std::uint64_t u) const {
  if (u < 1) throw Error(ErrorKind::InvalidArgument, "block index u starts at 1");
  switch (spec_.variant) {
    case Variant::TheoremA: {
      Rational inv_q{spec_.q.den, spec_.q.num};
      return real_pow(Real(u), inv_q) / witness_value(u);
    }
    case Variant::TheoremB:
      return boost::multiprecision::sqrt(Real(u)) / real_exp2(g(u));
    case Variant::Lemma14: {
      Real two_g = real_exp2(g(u));
      return boost::multiprecision::sqrt(upow(u, spec_.k) / spec_.psi->eval(two_g)) / two_g;
    }
  }
  return Real(0);
}

YoungFunctional Schedule::witness_functional() const {
  switch (spec_.variant) {
    case Variant::TheoremA: return YoungFunctional::power_over_phi(spec_.phi, spec_.q);
    case Variant::TheoremB: return YoungFunctional::identity();
    case Variant::Lemma14: return YoungFunctional::x_phi(*spec_.psi);
  }
  return YoungFunctional::identity();
}

Real Schedule::sweep_bound(std::uint64_t u) const {
  switch (spec_.variant) {
    case Variant::TheoremA: return real_pow(Real(u), Rational{spec_.q.den, spec_.q.num}) / 4;
    case Variant::TheoremB: return boost::multiprecision::sqrt(Real(u)) / 4;
    case Variant::Lemma14: {
      Real two_g = real_exp2(g(u));
      return boost::multiprecision::sqrt(upow(u, spec_.k) / spec_.psi->eval(two_g)) / 4;
    }
  }
  return Real(0);
}

BlockIndex Schedule::block(std::uint64_t u) const {
  if (u < 1) throw Error(ErrorKind::InvalidArgument, "block index u starts at 1");
  if (u > caps_.max_u) throw Error(ErrorKind::ResourceLimit, "block " + std::to_string(u) + " beyond u cap");
  extend_prefix(u);
  std::lock_guard<std::mutex> lock(mutex_);
  return {u, prefix_cache_[u - 1], m_cache_[u - 1]};
}

BlockIndex Schedule::block_of(const BigInt& k) const {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "block_of needs k >= 0");
  for (std::uint64_t u = 1; u <= caps_.max_u; ++u) {
    BlockIndex b = block(u);
    if (k < b.end()) return b;
  }
  throw Error(ErrorKind::ResourceLimit, "k = " + to_string(k) + " lies beyond block " + std::to_string(caps_.max_u));
}

LatticeFunction Schedule::witness(std::uint64_t u) const {
  return LatticeFunction::periodic(M(u), {{BigInt(0), witness_value(u)}});
}

}  // namespace pseq
