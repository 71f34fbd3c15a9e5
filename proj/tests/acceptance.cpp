// Acceptance harness: one [PASS]/[FAIL] line per criterion, each at its stated tolerance.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cbs/closed.hpp"
#include "cbs/identity.hpp"
#include "cbs/registry.hpp"
#include "cbs/series.hpp"

using namespace cbs;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FamilySpec spec_x(Family f, const std::string& x) {
  FamilySpec s;
  s.id = f;
  s.x = parse_value(x);
  return s;
}

FamilySpec spec_phi(Family f, const std::string& phi) {
  FamilySpec s;
  s.id = f;
  s.phi = parse_value(phi);
  return s;
}

FamilySpec spec_g(int index, Sequence seq, long m, long s, long p) {
  FamilySpec g;
  g.id = static_cast<Family>(static_cast<int>(Family::G1) + index - 1);
  g.seq = seq;
  g.m = m;
  g.s = s;
  g.p = Expr::number(p);
  return g;
}

FamilySpec spec_r(Family f, long r) {
  FamilySpec s;
  s.id = f;
  s.r = r;
  return s;
}

Family nth(Family first, int k) { return static_cast<Family>(static_cast<int>(first) + k); }

// compare_family, recording a problem on failure or exception.
void expect_compare(Outcome& o, const FamilySpec& spec, const PrecisionContext& ctx, const Real& tol,
                    std::optional<long> force = std::nullopt, const Real* max_bound = nullptr) {
  try {
    ComparisonReport r = compare_family(spec, ctx, tol, kDefaultMaxTerms * 2, force);
    bool ok = r.pass && r.abs_diff <= tol && (!max_bound || (r.certified_bound && *r.certified_bound <= *max_bound));
    o.require(ok, describe(spec) + ": diff " + r.abs_diff.to_string(6) + " bound " +
                      (r.certified_bound ? r.certified_bound->to_string(6) : std::string("none")));
  } catch (const std::exception& e) {
    o.require(false, describe(spec) + ": " + e.what());
  }
}

void expect_rows(Outcome& o, const std::string& set, const PrecisionContext& ctx, const Real& tol, int& count) {
  for (const auto& row : list_examples()) {
    if (row.set() != set) continue;
    ++count;
    ComparisonReport r = run_row(row, ctx, tol);
    o.require(r.pass, row.id + ": diff " + r.abs_diff.to_string(6) +
                          (r.certified_bound ? " bound " + r.certified_bound->to_string(6) : " uncertified") +
                          (r.note.empty() ? "" : " (" + r.note + ")"));
  }
}

const std::vector<std::string> kFPoints = {"9/10", "-9/10", "1/2", "-1/2", "1/10"};
const std::vector<std::string> kTrigAngles = {"pi/6", "pi/8", "-pi/5"};

Outcome criterion1() {
  Outcome o;
  auto ctx = make_context(50);
  Real tol = ctx.pow10(-40);
  auto t0 = Clock::now();
  for (int k = 0; k < 6; ++k)
    for (const auto& x : kFPoints) expect_compare(o, spec_x(nth(Family::F1, k), x), ctx, tol);
  double t = seconds_since(t0);
  o.require(t <= 10.0, "runtime " + std::to_string(t) + " s > 10 s");
  o.summary = "30 comparisons at 50 digits, |diff| <= 1e-40, " + std::to_string(t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto ctx = make_context(40);
  int n = 0;
  expect_rows(o, "ex6", ctx, ctx.pow10(-30), n);
  o.summary = std::to_string(n) + " rows at 40 digits, tolerance 1e-30";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto ctx = make_context(40);
  Real tol = ctx.pow10(-30);
  for (int k = 0; k < 6; ++k)
    for (const auto& phi : kTrigAngles) expect_compare(o, spec_phi(nth(Family::T1, k), phi), ctx, tol);
  int n = 0;
  expect_rows(o, "trig", ctx, tol, n);
  o.summary = "18 comparisons and " + std::to_string(n) + " rows at 40 digits, tolerance 1e-30";
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto ctx = make_context(40);
  Real tol = ctx.pow10(-30);
  // At x = 1/2 the Leibniz bound of the alternating tail is the only certificate, so
  // the comparison runs in bound mode with 1.4e7 terms (bound about 9.5e-13).
  const long kHalfTerms = 14'000'000;
  Real bound_cap = ctx.pow10(-12);
  for (Family f : {Family::C1, Family::C2}) {
    expect_compare(o, spec_x(f, "1/10"), ctx, tol);
    expect_compare(o, spec_x(f, "2/5"), ctx, tol);
    try {
      ComparisonReport r = compare_family(spec_x(f, "1/2"), ctx, tol, kDefaultMaxTerms, kHalfTerms);
      o.require(r.pass && r.certified_bound && *r.certified_bound <= bound_cap,
                describe(spec_x(f, "1/2")) + ": diff " + r.abs_diff.to_string(6) + " bound " +
                    (r.certified_bound ? r.certified_bound->to_string(6) : std::string("none")));
    } catch (const std::exception& e) {
      o.require(false, std::string("x=1/2: ") + e.what());
    }
  }
  o.summary = "x in {1/10, 2/5} adaptive to 1e-30; x = 1/2 in bound mode, 1.4e7 terms, bound <= 1e-12";
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto ctx = make_context(40);
  Real tol = ctx.pow10(-30);
  Real residue_cap = ctx.pow10(-35);
  const long grid[][3] = {{1, 0, 8}, {1, 0, 16}, {2, 0, 16}, {2, 1, 12}, {3, 0, 20}};
  int n = 0;
  for (int g = 1; g <= 12; ++g)
    for (Sequence seq : {Sequence::Fibonacci, Sequence::Lucas})
      for (const auto& mps : grid) {
        FamilySpec s = spec_g(g, seq, mps[0], mps[1], mps[2]);
        expect_compare(o, s, ctx, tol);
        Real residue = closed_value_detailed(s, ctx).residue;
        o.require(residue <= residue_cap, describe(s) + ": residue " + residue.to_string(6));
        ++n;
      }
  int rows = 0;
  for (const char* set : {"ex9", "ex10", "ex11"}) expect_rows(o, set, ctx, tol, rows);
  o.summary = std::to_string(n) + " grid comparisons (residue <= 1e-35) and " + std::to_string(rows) +
              " rows at 40 digits, tolerance 1e-30";
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto ctx = make_context(40);
  Real tol = ctx.pow10(-30);
  for (int k = 0; k < 4; ++k)
    for (const char* x : {"1/2", "-1/2", "9/10"}) expect_compare(o, spec_x(nth(Family::H1, k), x), ctx, tol);
  for (Family f : {Family::I1, Family::I2})
    for (long r : {2L, 4L, 6L, 8L}) expect_compare(o, spec_r(f, r), ctx, tol);
  FamilySpec i3 = spec_r(Family::I3, 0);
  expect_compare(o, i3, ctx, tol);
  Constants k = constants(ctx);
  o.require(abs(closed_value(i3, ctx) - sqrt(k.alpha * k.sqrt5)) <= ctx.pow10(-38), "I3 closed form != sqrt(alpha sqrt5)");
  o.require(abs(closed_value(spec_r(Family::I2, 2), ctx) - ctx.parse("1.2533")) <= ctx.parse("0.0001"),
            "I2 r=2 not near 1.2533");
  int rows = 0;
  expect_rows(o, "thm15", ctx, tol, rows);
  o.summary = "12 H, 9 I comparisons and " + std::to_string(rows) + " rows at 40 digits, tolerance 1e-30";
  return o;
}

Outcome criterion7() {
  Outcome o;
  IdentityReport h = check_harmonic_integral(100);
  o.require(h.pass, "harmonic integral identity fails");
  auto ctx = make_context(30);
  auto t0 = Clock::now();
  FamilySpec j;
  j.id = Family::J1;
  EvalResult ev = sum_fixed(j, 1'000'000 - 1, ctx);
  double t = seconds_since(t0);
  Real closed = closed_value(j, ctx);
  Real bound = *ev.truncation_bound + ev.rounding_bound;
  Real diff = abs(ev.value - closed);
  o.require(diff <= bound, "|partial - closed| " + diff.to_string(6) + " > bound " + bound.to_string(6));
  o.require(bound <= ctx.parse("0.02"), "bound " + bound.to_string(6) + " > 0.02");
  o.require(abs(closed - ctx.parse("3.15073")) <= ctx.parse("0.00001"), "closed value not near 3.15073");
  o.require(t <= 60.0, "runtime " + std::to_string(t) + " s > 60 s");
  int rows = 0;
  expect_rows(o, "thm16", ctx, ctx.pow10(-25), rows);
  o.summary = "v <= 100 exact; N = 1e6: diff " + diff.to_string(4) + " <= bound " + bound.to_string(4) + ", " +
              std::to_string(t) + " s";
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& rep : {check_convolution(300), check_weighted_convolution(300),
                          check_binomial_transform(60, {-3, -2, -1, 0, 1, 2, 3}, true),
                          check_sign_split(random_rational_sequences(200, 64, 20240601), 64)})
    o.require(rep.pass, rep.id + " fails (" + std::to_string(rep.failures.size()) + " counterexamples)");
  o.summary = "convolutions n <= 300, binomial transform n <= 60 with t in -3..3, sign split on 200 sequences";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto ctx = make_context(40);
  auto xs = sample_points(Rational(-7, 10), Rational(7, 10), 20, ctx);
  for (const auto& rep : {check_arcsin_split(xs, ctx), check_map_derivatives(xs, ctx)})
    o.require(rep.pass, rep.id + " fails (" + std::to_string(rep.failures.size()) + " points)");
  o.summary = "20 points in (-0.7, 0.7) at 40 digits";
  return o;
}

int run_cli_status(const std::string& args) {
  std::string cmd = std::string(CBS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion10() {
  Outcome o;
  auto lo = make_context(20), hi = make_context(40);
  std::vector<FamilySpec> specs;
  for (int k = 0; k < 6; ++k)
    for (const auto& x : kFPoints) specs.push_back(spec_x(nth(Family::F1, k), x));
  for (int k = 0; k < 6; ++k)
    for (const auto& phi : kTrigAngles) specs.push_back(spec_phi(nth(Family::T1, k), phi));
  for (int g = 1; g <= 12; ++g) specs.push_back(spec_g(g, Sequence::Lucas, 2, 1, 12));
  for (int k = 0; k < 4; ++k) specs.push_back(spec_x(nth(Family::H1, k), "-1/2"));
  int n = 0;
  for (const auto& s : specs) {
    ComparisonReport a = compare_family(s, lo, lo.pow10(-15));
    if (!a.pass) continue;  // only converged comparisons are in scope
    ++n;
    Real closed_hi = closed_value(s, hi);
    Real slack = closed_tolerance(lo);
    o.require(abs(a.series - closed_hi) <= *a.certified_bound + slack,
              describe(s) + ": 20-digit series outside its bound against the 40-digit value");
    o.require(abs(a.closed - closed_hi) <= slack, describe(s) + ": 20-digit closed form moved");
  }
  for (const auto& row : list_examples()) {
    ComparisonReport a = run_row(row, lo, lo.pow10(-15));
    if (!a.pass || a.bound_mode) continue;
    ++n;
    Real expected_hi = row.expected.eval(hi);
    o.require(abs(a.series - expected_hi) <= *a.certified_bound + closed_tolerance(lo),
              row.id + ": 20-digit series outside its bound against the 40-digit value");
  }
  for (const char* x : {"1", "-1"}) {
    int code = run_cli_status(std::string("eval --family F3 --x ") + x + " --digits 20");
    o.require(code == 3, std::string("eval F3 x=") + x + " exited " + std::to_string(code));
  }
  o.require(run_cli_status("eval --family F3 --x 1 --digits 20 --force-terms 1000") == 0,
            "--force-terms at the endpoint did not succeed");
  o.summary = std::to_string(n) + " converged comparisons stable from 20 to 40 digits; endpoint exits 3";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"F families grid", criterion1}, {"ex6 registry rows", criterion2},
      {"tangent families and rows", criterion3},  {"C families", criterion4},
      {"G grid and rows", criterion5},            {"H and I families", criterion6},
      {"harmonic series J1", criterion7},         {"exact identity sweeps", criterion8},
      {"arcsin split and map derivatives", criterion9}, {"precision doubling and endpoint refusal", criterion10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds_since(t0));
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].first << ": " << o.summary
              << " [" << timing << "]\n";
    for (const auto& p : o.problems) std::cout << "         - " << p << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
