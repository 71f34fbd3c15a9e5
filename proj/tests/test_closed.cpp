#include <doctest.h>

#include "cbs/closed.hpp"
#include "support.hpp"

using namespace cbs;

namespace {

FamilySpec family(Family f) {
  FamilySpec s;
  s.id = f;
  return s;
}

}  // namespace

TEST_CASE("closed forms match the frozen oracle sums") {
  auto ctx = make_context(50);
  for (const auto& o : test::oracle_values()) {
    if (o.terms) continue;
    CAPTURE(o.key);
    Real expected = ctx.parse(o.value);
    ClosedValue cv = closed_value_detailed(o.spec, ctx);
    CHECK(abs(cv.value - expected) <= ctx.pow10(-43) * max(ctx.from(1), abs(expected)));
    CHECK(cv.residue <= ctx.pow10(-45));
  }
}

TEST_CASE("closed-form reference decimals") {
  auto ctx = make_context(30);
  auto near = [&](const Real& v, const char* s, int digits) {
    return abs(v - ctx.parse(s)) <= ctx.pow10(-digits);
  };
  FamilySpec f3 = family(Family::F3);
  f3.x = parse_value("1");
  CHECK(near(closed_value(f3, ctx), "0.455089860562227341304", 20));

  FamilySpec t5 = family(Family::T5);
  t5.phi = parse_value("pi/8");
  CHECK(near(closed_value(t5, ctx), "-0.255097542636414495753862046091", 28));
  t5.phi = parse_value("pi/6");
  CHECK(near(closed_value(t5, ctx), "-0.329018503238123115204804725449", 28));

  FamilySpec t1 = family(Family::T1);
  t1.phi = parse_value("0");
  CHECK(near(closed_value(t1, ctx), "1", 28));

  CHECK(near(closed_value(family(Family::I3), ctx), "1.90211303259030714423", 20));
  CHECK(near(closed_value(family(Family::J1), ctx), "3.15072776895", 10));
  FamilySpec i2 = family(Family::I2);
  i2.r = 2;
  CHECK(near(closed_value(i2, ctx), "1.253323738", 9));

  FamilySpec g5 = family(Family::G5);
  g5.m = 1;
  g5.p = Expr::number(8);
  CHECK(near(closed_value(g5, ctx), "-0.2573026618", 10));
}

TEST_CASE("map values behind the example constants") {
  auto ctx = make_context(30);
  Constants k = constants(ctx);
  Real p8 = ctx.from(8), p16 = ctx.from(16);
  CHECK(abs(h_map(Complex(k.alpha), 1, p8, ctx).re() - ctx.parse("0.594859496926")) <= ctx.pow10(-12));
  CHECK(abs(abs(h_map(Complex(k.beta), 1, p8, ctx)) - ctx.parse("0.388569418717")) <= ctx.pow10(-12));
  CHECK(abs(h_map(Complex(k.alpha), 2, p16, ctx).re() - ctx.parse("0.546041476780")) <= ctx.pow10(-12));
  CHECK(abs(h_map(Complex(k.beta), 2, p16, ctx).re() - ctx.parse("0.218259938888")) <= ctx.pow10(-12));
  CHECK_THROWS_AS(h_map(Complex(k.alpha), 1, ctx.zero(), ctx), DomainError);
}

TEST_CASE("imaginary residue stays below 10^-35 on the G grid") {
  auto ctx = make_context(40);
  const long grid[][3] = {{1, 0, 8}, {1, 0, 16}, {2, 0, 16}, {2, 1, 12}, {3, 0, 20}};
  for (int g = 0; g < 12; ++g) {
    for (Sequence seq : {Sequence::Fibonacci, Sequence::Lucas}) {
      for (const auto& mps : grid) {
        FamilySpec s = family(static_cast<Family>(static_cast<int>(Family::G1) + g));
        s.m = mps[0];
        s.s = mps[1];
        s.p = Expr::number(mps[2]);
        s.seq = seq;
        CAPTURE(describe(s));
        CHECK(closed_value_detailed(s, ctx).residue <= ctx.pow10(-35));
      }
    }
  }
}

TEST_CASE("complex paths for negative arguments") {
  auto ctx = make_context(30);
  for (const char* x : {"-1/2", "-9/10"}) {
    FamilySpec h3 = family(Family::H3);
    h3.x = parse_value(x);
    CHECK(closed_value_detailed(h3, ctx).residue <= ctx.pow10(-35));
  }
  FamilySpec t2 = family(Family::T2);
  t2.phi = parse_value("-pi/5");
  CHECK(closed_value_detailed(t2, ctx).residue <= ctx.pow10(-35));
}
