#include "pseq/numeric.hpp"

#include "pseq/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace pseq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SearchBudgetExhausted: return "search-budget-exhausted";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::EmptyPrefix: return "empty-prefix";
    case ErrorKind::MissingPlan: return "missing-plan";
    case ErrorKind::Config: return "config-error";
    case ErrorKind::Io: return "io-error";
  }
  return "error";
}

namespace {

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()) {
  unsigned want = digits_for_bits(bits < kBaseBits ? kBaseBits : bits);
  if (want > saved_digits_) Real::default_precision(want);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

unsigned PrecisionScope::current_bits() {
  return static_cast<unsigned>(std::ceil(Real::default_precision() * 3.3219280948873622));
}

Real Rational::real() const { return Real(num) / Real(den); }

Rational Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite rational");
  bool neg = x < 0;
  double v = std::fabs(x);
  // Convergents h/k of the continued fraction of v.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = v;
  Rational best{static_cast<std::int64_t>(std::llround(v)), 1};
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rest);
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0;
    std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    best = {h2, k2};
    if (std::fabs(static_cast<double>(h2) / static_cast<double>(k2) - v) <= 1e-12 * std::max(1.0, v)) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = rest - a;
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
  }
  if (neg) best.num = -best.num;
  return best;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return from_double(std::stod(std::string(text)));
    std::int64_t n = std::stoll(std::string(text.substr(0, slash)));
    std::int64_t d = std::stoll(std::string(text.substr(slash + 1)));
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse rational '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

unsigned bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(x.backend().data(), 2));
}

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative value");
  BigInt r;
  mpz_sqrt(r.backend().data(), x.backend().data());
  return r;
}

BigInt ceil_sqrt(const BigInt& x) {
  if (x <= 0) return 0;
  BigInt r = isqrt(x);
  if (r * r < x) ++r;
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.backend().data(), a.backend().data(), m.backend().data());
  return r;
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_setbit(r.backend().data(), e);
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

BigInt count_congruent(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) {
  if (hi <= lo) return 0;
  // #{x < t : x = r mod m} - #{x < lo : ...} using floor((t - r - 1) / m).
  auto below = [&](const BigInt& t) { return floor_div(t - r - 1, m); };
  return below(hi) - below(lo);
}

BigInt first_congruent(const BigInt& lo, const BigInt& r, const BigInt& m) {
  return lo + mod_floor(r - lo, m);
}

bool crt(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2, BigInt& r, BigInt& m) {
  BigInt g, s, t;
  mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), m1.backend().data(),
             m2.backend().data());
  BigInt diff = r2 - r1;
  if (mod_floor(diff, g) != 0) return false;
  BigInt l = m1 / g * m2;
  // x = r1 + m1 * ((diff / g) * s mod (m2 / g))
  BigInt k = mod_floor((diff / g) * s, m2 / g);
  r = mod_floor(r1 + m1 * k, l);
  m = l;
  return true;
}

Real to_real(const BigInt& x) {
  Real r;
  mpfr_set_z(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

BigInt floor_of(const Real& x) {
  if (!boost::multiprecision::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "floor of non-finite value");
  BigInt r;
  mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDD);
  return r;
}

BigInt ceil_of(const Real& x) {
  if (!boost::multiprecision::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "ceil of non-finite value");
  BigInt r;
  mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDU);
  return r;
}

double to_double(const Real& x) { return mpfr_get_d(x.backend().data(), MPFR_RNDN); }

double to_double(const BigInt& x) { return mpz_get_d(x.backend().data()); }

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty integer literal");
  BigInt r;
  if (mpz_set_str(r.backend().data(), s.c_str(), 10) != 0)
    throw Error(ErrorKind::InvalidArgument, "not a decimal integer: '" + s + "'");
  return r;
}

}  // namespace pseq

namespace pseq {

Real real_log2(const Real& x) {
  Real r;
  mpfr_log2(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real real_exp2(const Real& x) {
  Real r;
  mpfr_exp2(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real real_pow(const Real& x, const Rational& e) {
  if (e.den == 1) {
    Real r;
    mpfr_pow_si(r.backend().data(), x.backend().data(), e.num, MPFR_RNDN);
    return r;
  }
  return boost::multiprecision::pow(x, e.real());
}

}  // namespace pseq

namespace pseq {

Real to_real(const BigRational& x) {
  return to_real(BigInt(boost::multiprecision::numerator(x))) / to_real(BigInt(boost::multiprecision::denominator(x)));
}

std::string to_string(const BigRational& x) { return x.str(); }

}  // namespace pseq
