#include <doctest.h>

#include "cbs/errors.hpp"
#include "cbs/identity.hpp"

using namespace cbs;

TEST_CASE("convolution identities") {
  IdentityReport r = check_convolution(80);
  CHECK(r.pass);
  CHECK(r.failures.empty());
  CHECK(r.id == "convolution");
  CHECK(r.range == "0 <= n <= 80");
}

TEST_CASE("weighted convolutions and the k^2 upper limit") {
  IdentityReport r = check_weighted_convolution(60);
  CHECK(r.pass);
  REQUIRE(r.notes.size() == 1);
  // The n-1 upper limit fails for every n >= 1 while the n limit holds.
  CHECK(r.notes[0].find("for 60 of 60") != std::string::npos);
}

TEST_CASE("binomial transform, values and coefficients") {
  IdentityReport r = check_binomial_transform(25, {-3, -2, -1, 0, 1, 2, 3}, true);
  CHECK(r.pass);
}

TEST_CASE("sign split on random rational sequences") {
  auto seqs = random_rational_sequences(50, 40, 99);
  CHECK(seqs.size() == 50);
  for (const auto& s : seqs) {
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 40);
    for (const auto& q : s) {
      CHECK(abs(q.get_num()) <= 1000);
      CHECK(q.get_den() <= 1000);
    }
  }
  CHECK(random_rational_sequences(50, 40, 99) == seqs);
  IdentityReport r = check_sign_split(seqs, 40);
  CHECK(r.pass);
  REQUIRE(r.notes.size() == 1);
}

TEST_CASE("sign split on f_n = n") {
  // Difference side: -2(f_1 - f_3 + f_5) = -6.
  std::vector<Rational> f = {0, 1, 2, 3, 4, 5};
  IdentityReport r = check_sign_split({f}, 5);
  CHECK(r.pass);
}

TEST_CASE("central sequences") {
  auto s = central_sequence(Rational(1, 2), 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 1);
  CHECK(s[1] == Rational(1, 4));
  CHECK(s[2] == Rational(3, 32));
  CHECK(s[3] == Rational(5, 128));
  CHECK(check_sign_split({central_sequence(Rational(-3, 7), 30)}, 29).pass);
}

TEST_CASE("arcsin split and map derivatives at 40 digits") {
  auto ctx = make_context(40);
  auto xs = sample_points(Rational(-7, 10), Rational(7, 10), 20, ctx);
  REQUIRE(xs.size() == 20);
  CHECK(xs.front() > ctx.from(Rational(-7, 10)));
  CHECK(xs.back() < ctx.from(Rational(7, 10)));
  CHECK(check_arcsin_split(xs, ctx).pass);
  CHECK(check_map_derivatives(xs, ctx).pass);
}

TEST_CASE("harmonic integral identity") {
  CHECK(check_harmonic_integral(60).pass);
  CHECK_THROWS_AS(check_convolution(-1), UsageError);
}
