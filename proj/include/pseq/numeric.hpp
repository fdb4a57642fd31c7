#pragma once

// Arbitrary-precision integer and floating types shared by every module.
//
// Real is an MPFR float whose precision is taken from the process-wide
// default at construction time. Code that needs more than the base precision
// opens a PrecisionScope and creates all intermediate values inside it.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace pseq {

using BigInt = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;
using BigRational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kBaseBits = 256;

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  static unsigned current_bits();

 private:
  unsigned saved_digits_;
};

/// Exact rational with small terms, used for gauge exponents and q.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Real real() const;
  bool is_integer() const { return den == 1; }

  /// Continued-fraction approximation, exact for dyadic and small-denominator inputs.
  static Rational from_double(double x, std::int64_t max_den = 10000);
  /// Accepts "3", "0.5", "1/3".
  static Rational parse(std::string_view text);
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);

unsigned bit_length(const BigInt& x);
BigInt isqrt(const BigInt& x);       // floor(sqrt(x)), x >= 0
BigInt ceil_sqrt(const BigInt& x);   // smallest y with y*y >= x
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod_floor(const BigInt& a, const BigInt& m);  // result in [0, m)
BigInt pow2(unsigned long e);
BigInt gcd(const BigInt& a, const BigInt& b);

/// Number of x in [lo, hi) with x = r (mod m); m >= 1.
BigInt count_congruent(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m);
/// Smallest x >= lo with x = r (mod m).
BigInt first_congruent(const BigInt& lo, const BigInt& r, const BigInt& m);

/// Solve x = r1 (mod m1), x = r2 (mod m2). Returns false when incompatible.
bool crt(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2, BigInt& r, BigInt& m);

Real to_real(const BigInt& x);
BigInt floor_of(const Real& x);
BigInt ceil_of(const Real& x);
double to_double(const Real& x);
double to_double(const BigInt& x);

std::string to_string(const BigInt& x);
std::string to_string(const Real& x, int digits = 17);
BigInt parse_bigint(std::string_view text);

}  // namespace pseq

namespace pseq {

Real real_log2(const Real& x);
Real real_exp2(const Real& x);
/// x^e; integer exponents use exact repeated multiplication semantics.
Real real_pow(const Real& x, const Rational& e);

Real to_real(const BigRational& x);
std::string to_string(const BigRational& x);

}  // namespace pseq
