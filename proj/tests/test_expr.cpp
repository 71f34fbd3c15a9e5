#include <doctest.h>

#include "cbs/errors.hpp"
#include "cbs/expr.hpp"

using namespace cbs;

TEST_CASE("expression parse and canonical print") {
  Expr e = Expr::parse("(* (sqrt 2)   (arccot (sqrt delta)))");
  CHECK(e.to_string() == "(* (sqrt 2) (arccot (sqrt delta)))");
  CHECK(Expr::parse(e.to_string()) == e);
  CHECK(Expr::parse("0.125").to_string() == "1/8");
  CHECK(Expr::parse("(pow alpha 3/2)").kind() == Expr::Kind::Call);
}

TEST_CASE("expression evaluation") {
  auto ctx = make_context(40);
  const Real tol = ctx.pow10(-42);
  Constants k = constants(ctx);
  CHECK(abs(Expr::parse("(/ 1 (sqrt (* 2 delta)))").eval(ctx) - 1L / sqrt(2L * k.delta)) <= tol);
  CHECK(abs(Expr::parse("(pow alpha 3/2)").eval(ctx) - k.alpha * sqrt(k.alpha)) <= tol);
  CHECK(abs(Expr::parse("(- 7)").eval(ctx) + 7L) <= tol);
  CHECK(abs(Expr::parse("(+ 1 2 3)").eval(ctx) - 6L) <= tol);
  CHECK(abs(Expr::parse("(artanh 1/2)").eval(ctx) - atanh(ctx.from(1) / 2L)) <= tol);
}

TEST_CASE("exact folding") {
  CHECK(Expr::parse("(/ (+ 1 1/2) 3)").as_rational() == Rational(1, 2));
  CHECK(!Expr::parse("(sqrt 2)").as_rational());
  CHECK(Expr::parse("(pow 2/3 2)").as_rational() == Rational(4, 9));
}

TEST_CASE("expression errors") {
  auto ctx = make_context(20);
  CHECK_THROWS_AS(Expr::parse("(sqrt 1 2)"), UsageError);
  CHECK_THROWS_AS(Expr::parse("(frob 1)"), UsageError);
  CHECK_THROWS_AS(Expr::parse("(+ 1 2"), UsageError);
  CHECK_THROWS_AS(Expr::parse("gamma"), UsageError);
  CHECK_THROWS_AS(Expr::parse("(pow 2 (sqrt 2))").eval(ctx), UsageError);
}

TEST_CASE("parameter values") {
  auto ctx = make_context(30);
  Real pi_ = pi(ctx.bits());
  CHECK(parse_value("-3/4").as_rational() == Rational(-3, 4));
  CHECK(parse_value("0.9").as_rational() == Rational(9, 10));
  CHECK(abs(parse_value("pi/6").eval(ctx) - pi_ / 6L) <= ctx.pow10(-40));
  CHECK(abs(parse_value("-pi/5").eval(ctx) + pi_ / 5L) <= ctx.pow10(-40));
  CHECK_THROWS_AS(parse_value("1/0"), UsageError);
  CHECK_THROWS_AS(parse_value("abc"), UsageError);
}
