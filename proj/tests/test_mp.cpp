#include <doctest.h>

#include <cmath>
#include <random>

#include "cbs/complex.hpp"
#include "cbs/errors.hpp"
#include "cbs/exact.hpp"
#include "cbs/mp.hpp"

using namespace cbs;

namespace {

bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

}  // namespace

TEST_CASE("precision context") {
  CHECK(make_context(30).bits() == static_cast<mpfr_prec_t>(std::ceil(45 * std::log2(10.0))) + 4);
  CHECK(make_context(30).working_digits() == 45);
  CHECK_THROWS_AS(make_context(0), UsageError);
  auto ctx = make_context(20);
  CHECK(ctx.unit_roundoff() <= ctx.pow10(-35));
  CHECK_THROWS_AS(ctx.parse("0.1x"), UsageError);
  CHECK(close(ctx.parse("0.1"), ctx.from(1) / 10L, ctx.pow10(-40)));
}

TEST_CASE("constants to 50 digits") {
  auto ctx = make_context(50);
  Constants k = constants(ctx);
  const Real tol = ctx.pow10(-50);
  CHECK(close(k.alpha, ctx.parse("1.618033988749894848204586834365638117720309179805762862"), tol));
  CHECK(close(k.delta, ctx.parse("2.414213562373095048801688724209698078569671875376948073"), tol));
  CHECK(close(k.pi, ctx.parse("3.141592653589793238462643383279502884197169399375105821"), tol));
  CHECK(close(k.beta, 1L - k.alpha, tol));
  CHECK(close(k.alpha * k.beta, ctx.from(-1), tol));
  CHECK(close(k.sqrt5 * k.sqrt5, ctx.from(5), tol));
}

TEST_CASE("elementary domain errors") {
  auto ctx = make_context(20);
  CHECK_THROWS_AS(sqrt(ctx.from(-1)), DomainError);
  CHECK_THROWS_AS(log(ctx.zero()), DomainError);
  CHECK_THROWS_AS(atanh(ctx.from(2)), DomainError);
  CHECK_THROWS_AS(acoth(ctx.from(1) / 2L), DomainError);
  CHECK_THROWS_AS(acot(ctx.zero()), DomainError);
}

TEST_CASE("elementary identities") {
  auto ctx = make_context(40);
  const Real tol = ctx.pow10(-42);
  Real x = ctx.from(3) / 7L;
  CHECK(close(acot(x), atan(1L / x), tol));
  CHECK(close(acoth(1L / x), atanh(x), tol));
  CHECK(close(pow(ctx.from(8), Rational(1, 3)), ctx.from(2), tol));
  CHECK(close(pow(ctx.from(-8), Rational(1, 3)), ctx.from(-2), tol));
  CHECK_THROWS_AS(pow(ctx.from(-8), Rational(1, 2)), DomainError);
  CHECK(close(exp(log(x)), x, tol));
  CHECK(close(tan(x), sin(x) / cos(x), tol));
  CHECK(close(atan2(ctx.from(1), ctx.from(-1)), 3L * pi(ctx.bits()) / 4L, tol));
}

TEST_CASE("floor_half and ceil_half") {
  for (long n = -9; n <= 9; ++n) {
    CHECK(floor_half(n) == static_cast<long>(std::floor(n / 2.0)));
    CHECK(ceil_half(n) == static_cast<long>(std::ceil(n / 2.0)));
  }
}

TEST_CASE("property: sin^2 + cos^2 = 1 and tanh/artanh round trip") {
  auto ctx = make_context(30);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-999, 999);
  const Real tol = 100L * ctx.unit_roundoff();
  for (int i = 0; i < 200; ++i) {
    Real x = ctx.from(num(rng)) / 1000L;
    Real s = sin(x), c = cos(x);
    CHECK(close(s * s + c * c, ctx.from(1), tol));
    Real t = atanh(x);
    Real back = (exp(2L * t) - 1L) / (exp(2L * t) + 1L);
    CHECK(close(back, x, tol));
  }
}

TEST_CASE("complex principal branches") {
  auto ctx = make_context(30);
  const Real tol = ctx.pow10(-40);
  Real pi_ = pi(ctx.bits());

  Complex r = sqrt(Complex(ctx.from(-4)));
  CHECK(close(r.re(), ctx.zero(), tol));
  CHECK(close(r.im(), ctx.from(2), tol));

  Complex l = log(Complex(ctx.from(-1)));
  CHECK(close(l.im(), pi_, tol));
  // -1 - 0i still maps to +pi.
  Real neg_zero = ctx.zero();
  mpfr_neg(neg_zero.raw(), neg_zero.raw(), MPFR_RNDN);
  CHECK(close(log(Complex(ctx.from(-1), neg_zero)).im(), pi_, tol));

  Complex z(ctx.from(1) / 2L, ctx.from(1) / 2L);
  Complex a = asin(z);
  CHECK(close(a.re(), ctx.parse("0.45227844715119068206"), ctx.pow10(-20)));

  // artanh(z) = -i arctan(iz)
  Complex w(ctx.from(3) / 10L, ctx.from(-2) / 5L);
  Complex lhs = atanh(w);
  Complex rhs = mul_i(mul_i(mul_i(atan(mul_i(w)))));
  CHECK(close(lhs.re(), rhs.re(), tol));
  CHECK(close(lhs.im(), rhs.im(), tol));

  Complex p = pow(z, -3) * pow(z, 3);
  CHECK(close(p.re(), ctx.from(1), tol));
  CHECK(close(p.im(), ctx.zero(), tol));
}

TEST_CASE("property: complex sqrt squares back with Re >= 0") {
  auto ctx = make_context(25);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-500, 500);
  const Real tol = 1000L * ctx.unit_roundoff();
  for (int i = 0; i < 200; ++i) {
    Complex z(ctx.from(num(rng)) / 37L, ctx.from(num(rng)) / 41L);
    Complex s = sqrt(z);
    CHECK(s.re().sign() >= 0);
    Complex back = s * s;
    CHECK(close(back.re(), z.re(), tol * max(ctx.from(1), abs(z))));
    CHECK(close(back.im(), z.im(), tol * max(ctx.from(1), abs(z))));
  }
}
