#pragma once

// Arbitrary-precision reals on top of MPFR.
//
// Every Real carries its own binary precision. Binary operators produce a
// result at the larger of the two operand precisions; functions produce a
// result at the argument's precision. All rounding is to nearest, so under a
// PrecisionContext each elementary operation has relative error at most
// 2^-bits <= 10^-(digits + guard_digits).

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace cbs {

class Real;

struct PrecisionContext {
  int digits = 30;
  int guard_digits = 15;

  int working_digits() const { return digits + guard_digits; }
  mpfr_prec_t bits() const;

  Real zero() const;
  Real from(long v) const;
  Real from(const mpz_class& v) const;
  Real from(const mpq_class& v) const;
  /// Parses a decimal literal ("0.9", "-1.5e-3") at working precision.
  Real parse(std::string_view text) const;
  /// 10^e at working precision.
  Real pow10(long e) const;
  /// Unit roundoff bound 2^(1-bits).
  Real unit_roundoff() const;
};

PrecisionContext make_context(int digits, int guard_digits = 15);

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(long v, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal rendering with `digits` significant digits ("%.{digits}Rg").
  std::string to_string(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long k);
  Real& operator/=(long k);

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long k);
  friend Real operator*(long k, const Real& a);
  friend Real operator/(const Real& a, long k);
  friend Real operator+(const Real& a, long k);
  friend Real operator+(long k, const Real& a) { return a + k; }
  friend Real operator-(const Real& a, long k);
  friend Real operator-(long k, const Real& a);
  friend Real operator/(long k, const Real& a);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long k) { return mpfr_cmp_si(a.v_, k) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long k);

 private:
  mpfr_t v_;
};

// Elementary functions. Domain violations throw DomainError naming the
// function and the offending argument.
Real abs(const Real& a);
Real sqrt(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
Real atan(const Real& a);
Real atan2(const Real& y, const Real& x);
Real atanh(const Real& a);
/// arccot(a) = arctan(1/a), a != 0.
Real acot(const Real& a);
/// arccoth(a) = artanh(1/a), |a| > 1.
Real acoth(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real tan(const Real& a);
Real lngamma(const Real& a);
Real pow(const Real& a, long k);
/// a^(p/q); a must be >= 0 unless q is odd.
Real pow(const Real& a, const mpq_class& e);
int sgn(const Real& a);
Real pi(mpfr_prec_t bits);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

/// Unified dispatch used by expression evaluation: op is one of
/// add sub mul div neg sqrt pow ln exp arctan artanh arccot arccoth sin cos tan sgn abs.
Real elementary_real(std::string_view op, std::span<const Real> args, const PrecisionContext& ctx);

/// floor(n/2) and ceil(n/2) for any integer n.
constexpr long floor_half(long n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }
constexpr long ceil_half(long n) { return n >= 0 ? (n + 1) / 2 : -(-n / 2); }

struct Constants {
  Real alpha;   // golden ratio (1+sqrt5)/2
  Real beta;    // -1/alpha
  Real delta;   // silver ratio 1+sqrt2
  Real sqrt5;
  Real pi;
};

Constants constants(const PrecisionContext& ctx);

}  // namespace cbs
