#include "cbs/identity.hpp"

#include <random>

#include "cbs/complex.hpp"
#include "cbs/errors.hpp"

namespace cbs {

void IdentityReport::fail(std::string params, std::string lhs, std::string rhs) {
  pass = false;
  failures.push_back(IdentityFailure{std::move(params), std::move(lhs), std::move(rhs)});
}

namespace {

std::vector<Integer> central_table(long n_max) {
  std::vector<Integer> c(static_cast<std::size_t>(n_max + 1));
  c[0] = 1;
  for (long j = 0; j < n_max; ++j) {
    c[j + 1] = c[j] * (2 * (2 * j + 1));
    mpz_divexact_ui(c[j + 1].get_mpz_t(), c[j + 1].get_mpz_t(), static_cast<unsigned long>(j + 1));
  }
  return c;
}

Integer pow2(long e) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return v;
}

// 2^e as an exact rational for any integer e.
Rational pow2q(long e) { return e >= 0 ? Rational(pow2(e)) : Rational(1, pow2(-e)); }

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return v.get_str(); }

void require_nonneg(long v, const char* what) {
  if (v < 0) throw UsageError(std::string(what) + " must be >= 0");
}

}  // namespace

IdentityReport check_convolution(long n_max) {
  require_nonneg(n_max, "n_max");
  IdentityReport rep;
  rep.id = "convolution";
  rep.range = "0 <= n <= " + std::to_string(n_max);
  auto c = central_table(n_max);
  for (long n = 0; n <= n_max; ++n) {
    Integer plain = 0, alt = 0;
    for (long k = 0; k <= n; ++k) {
      Integer t = c[k] * c[n - k];
      plain += t;
      if (k % 2) alt -= t;
      else alt += t;
    }
    Integer rhs = pow2(2 * n);
    if (plain != rhs) rep.fail("plain n=" + std::to_string(n), str(plain), str(rhs));
    Integer rhs_alt = n % 2 == 0 ? binomial(n, n / 2) * pow2(n) : Integer(0);
    if (alt != rhs_alt) rep.fail("alternating n=" + std::to_string(n), str(alt), str(rhs_alt));
  }
  return rep;
}

IdentityReport check_weighted_convolution(long n_max) {
  if (n_max < 1) throw UsageError("n_max must be >= 1");
  IdentityReport rep;
  rep.id = "weighted-convolution";
  rep.range = "1 <= n <= " + std::to_string(n_max);
  auto c = central_table(n_max);
  long short_limit_mismatch = 0;
  for (long n = 1; n <= n_max; ++n) {
    Integer kk = 0, kk_alt = 0, k1 = 0, k2 = 0, k2_short = 0;
    for (long k = 0; k <= n; ++k) {
      Integer t = c[k] * c[n - k];
      Integer w = t * (k * (n - k));
      kk += w;
      if (k % 2) kk_alt -= w;
      else kk_alt += w;
      k1 += t * k;
      Integer sq = t * (k * k);
      k2 += sq;
      if (k < n) k2_short += sq;
    }
    const std::string at = " n=" + std::to_string(n);
    Rational r11 = Rational(n * (n - 1)) * pow2q(2 * n - 3);
    if (Rational(kk) != r11) rep.fail("k(n-k)" + at, str(kk), str(r11));
    if (n % 2 == 1 && kk_alt != 0) rep.fail("alternating k(n-k)" + at, str(kk_alt), "0");
    Rational rk = Rational(n) * pow2q(2 * n - 1);
    if (Rational(k1) != rk) rep.fail("k" + at, str(k1), str(rk));
    Rational rk2 = Rational(n * (3 * n + 1)) * pow2q(2 * n - 3);
    if (Rational(k2) != rk2) rep.fail("k^2 (k <= n)" + at, str(k2), str(rk2));
    if (Rational(k2_short) != rk2) ++short_limit_mismatch;
  }
  rep.notes.push_back("k^2 sum with upper limit n-1 disagrees with n(3n+1)2^(2n-3) for " +
                      std::to_string(short_limit_mismatch) + " of " + std::to_string(n_max) +
                      " values of n; upper limit n is the one that holds");
  return rep;
}

IdentityReport check_binomial_transform(long n_max, const std::vector<long>& t_values, bool polynomial) {
  require_nonneg(n_max, "n_max");
  if (t_values.empty()) throw UsageError("t_values must be nonempty");
  std::string ts;
  for (long t : t_values) ts += (ts.empty() ? "" : ",") + std::to_string(t);
  IdentityReport rep;
  rep.id = "binomial-transform";
  rep.range = "0 <= n <= " + std::to_string(n_max) + ", t in {" + ts + "}";
  auto c = central_table(n_max);
  for (long n = 0; n <= n_max; ++n) {
    for (long t : t_values) {
      Integer lhs = 0, rhs = 0, tk = 1, utk = 1;
      for (long k = 0; k <= n; ++k) {
        lhs += pow2(2 * (n - k)) * binomial(n, k) * c[k] * tk;
        rhs += c[k] * c[n - k] * utk;
        tk *= t;
        utk *= (1 + t);
      }
      if (lhs != rhs) rep.fail("n=" + std::to_string(n) + " t=" + std::to_string(t), str(lhs), str(rhs));
    }
    if (polynomial) {
      for (long j = 0; j <= n; ++j) {
        Integer lhs = pow2(2 * (n - j)) * binomial(n, j) * c[j];
        Integer rhs = 0;
        for (long k = j; k <= n; ++k) rhs += c[k] * c[n - k] * binomial(k, j);
        if (lhs != rhs)
          rep.fail("n=" + std::to_string(n) + " coefficient of t^" + std::to_string(j), str(lhs), str(rhs));
      }
    }
  }
  if (polynomial) rep.range += ", plus coefficients in t";
  return rep;
}

IdentityReport check_sign_split(const std::vector<std::vector<Rational>>& sequences, long n_max) {
  require_nonneg(n_max, "n_max");
  IdentityReport rep;
  rep.id = "sign-split";
  rep.range = std::to_string(sequences.size()) + " sequences, n <= " + std::to_string(n_max);
  long printed_sign_holds = 0;
  for (std::size_t idx = 0; idx < sequences.size(); ++idx) {
    const auto& f = sequences[idx];
    const long len = std::min<long>(static_cast<long>(f.size()), n_max + 1);
    Rational sum_lhs = 0, diff_lhs = 0, even = 0, odd = 0;
    for (long n = 0; n < len; ++n) {
      const int c = ceil_half(n) % 2 == 0 ? 1 : -1;
      const int fl = floor_half(n) % 2 == 0 ? 1 : -1;
      sum_lhs += (c + fl) * f[n];
      diff_lhs += (c - fl) * f[n];
      const int s = (n / 2) % 2 == 0 ? 1 : -1;  // (-1)^k with k = floor(n/2)
      if (n % 2 == 0) even += s * f[n];
      else odd += s * f[n];
    }
    const std::string at = "sequence " + std::to_string(idx) + " length " + std::to_string(len);
    Rational rhs_sum = 2 * even, rhs_diff = -2 * odd;
    if (sum_lhs != rhs_sum) rep.fail("sum, " + at, str(sum_lhs), str(rhs_sum));
    if (diff_lhs != rhs_diff) rep.fail("difference, " + at, str(diff_lhs), str(rhs_diff));
    if (diff_lhs == Rational(2 * odd)) ++printed_sign_holds;
  }
  rep.notes.push_back("difference identity with +2 instead of -2 holds for " + std::to_string(printed_sign_holds) +
                      " of " + std::to_string(sequences.size()) + " sequences (only when the odd part vanishes)");
  return rep;
}

std::vector<std::vector<Rational>> random_rational_sequences(int count, int max_len, std::uint64_t seed) {
  if (count < 0 || max_len < 1) throw UsageError("count must be >= 0 and max_len >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_d(1, max_len), num_d(-1000, 1000), den_d(1, 1000);
  std::vector<std::vector<Rational>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> f(static_cast<std::size_t>(len_d(rng)));
    for (auto& q : f) {
      int a = num_d(rng);
      int b = den_d(rng);
      q = Rational(a, b);
      q.canonicalize();
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Rational> central_sequence(const Rational& x, int len) {
  std::vector<Rational> f;
  Rational term = 1;
  for (int n = 0; n < len; ++n) {
    f.push_back(term);
    term *= Rational(2 * n + 1, 2 * n + 2) * x;
  }
  return f;
}

IdentityReport check_arcsin_split(const std::vector<Real>& xs, const PrecisionContext& ctx) {
  IdentityReport rep;
  rep.id = "arcsin-split";
  rep.range = std::to_string(xs.size()) + " points, " + std::to_string(ctx.digits) + " digits";
  const Real tol = ctx.pow10(3 - ctx.digits);
  const Real s2 = sqrt(ctx.from(2));
  for (const Real& x0 : xs) {
    Real x = x0;
    mpfr_prec_round(x.raw(), ctx.bits(), MPFR_RNDN);
    Complex w = asin(Complex(x, x));
    Real u = s2 * x / sqrt(sqrt(1L + 4L * pow(x, 4L)) + 1L);
    Real re = atan(u), im = atanh(u);
    const std::string at = "x=" + x.to_string(20);
    if (abs(w.re() - re) > tol) rep.fail("Re, " + at, w.re().to_string(ctx.digits), re.to_string(ctx.digits));
    if (abs(w.im() - im) > tol) rep.fail("Im, " + at, w.im().to_string(ctx.digits), im.to_string(ctx.digits));
  }
  return rep;
}

IdentityReport check_map_derivatives(const std::vector<Real>& xs, const PrecisionContext& ctx) {
  IdentityReport rep;
  rep.id = "map-derivatives";
  rep.range = std::to_string(xs.size()) + " points, " + std::to_string(ctx.digits) + " digits";
  const long step_exp = ctx.digits / 3;
  const Real h = ctx.pow10(-step_exp);
  const Real fd_tol = 100L * h * h;
  const Real prod_tol = ctx.pow10(5 - ctx.digits);

  auto g = [](const Real& x, bool hyp) {
    Real u = x / sqrt(1L + sqrt(1L + pow(x, 4L)));
    return hyp ? atanh(u) : atan(u);
  };
  auto d1 = [](const Real& x, bool hyp) {
    Real a = sqrt(1L + pow(x, 4L));
    Real x2 = x * x;
    return sqrt((hyp ? a + x2 : a - x2) / (2L * (1L + pow(x, 4L))));
  };
  auto d2 = [](const Real& x, bool hyp) {
    Real a = sqrt(1L + pow(x, 4L));
    Real x2 = x * x;
    Real den = 2L * pow(1L + pow(x, 4L), 3L);
    if (hyp) return x * (a - 2L * x2) * sqrt((a + x2) / den);
    return -x * (a + 2L * x2) * sqrt((a - x2) / den);
  };

  for (const Real& x0 : xs) {
    Real x = x0;
    mpfr_prec_round(x.raw(), ctx.bits(), MPFR_RNDN);
    const std::string at = "x=" + x.to_string(20);
    for (bool hyp : {false, true}) {
      const std::string fn = hyp ? "artanh" : "arctan";
      Real fd1 = (g(x + h, hyp) - g(x - h, hyp)) / (2L * h);
      if (abs(fd1 - d1(x, hyp)) > fd_tol)
        rep.fail("first derivative of " + fn + ", " + at, fd1.to_string(30), d1(x, hyp).to_string(30));
      Real fd2 = (d1(x + h, hyp) - d1(x - h, hyp)) / (2L * h);
      if (abs(fd2 - d2(x, hyp)) > fd_tol)
        rep.fail("second derivative of " + fn + ", " + at, fd2.to_string(30), d2(x, hyp).to_string(30));
    }
    Real x4 = pow(x, 4L);
    Real p1 = d1(x, false) * d1(x, true);
    Real r1 = 1L / (2L * (1L + x4));
    if (abs(p1 - r1) > prod_tol) rep.fail("first-derivative product, " + at, p1.to_string(ctx.digits), r1.to_string(ctx.digits));
    Real p2 = d2(x, false) * d2(x, true);
    Real r2 = x * x * (3L * x4 - 1L) / (2L * pow(1L + x4, 3L));
    if (abs(p2 - r2) > prod_tol) rep.fail("second-derivative product, " + at, p2.to_string(ctx.digits), r2.to_string(ctx.digits));
  }
  rep.notes.push_back("finite-difference step 1e-" + std::to_string(step_exp) + ", tolerance 100 h^2");
  return rep;
}

IdentityReport check_harmonic_integral(long v_max) {
  if (v_max < 1) throw UsageError("v_max must be >= 1");
  IdentityReport rep;
  rep.id = "harmonic-integral";
  rep.range = "1 <= v <= " + std::to_string(v_max);
  Rational H = 0;
  for (long v = 1; v <= v_max; ++v) {
    H += Rational(1, v);
    Rational lhs = 0;
    for (long k = 0; k < v; ++k) {
      Rational t(binomial(v - 1, k), Integer((2 * k + 2) * (2 * k + 2)));
      if (k % 2) lhs -= t;
      else lhs += t;
    }
    lhs.canonicalize();
    Rational rhs = H / (4 * v);
    if (lhs != rhs) rep.fail("v=" + std::to_string(v), str(lhs), str(rhs));
  }
  return rep;
}

std::vector<Real> sample_points(const Rational& lo, const Rational& hi, int count, const PrecisionContext& ctx) {
  std::vector<Real> out;
  for (int i = 1; i <= count; ++i) out.push_back(ctx.from(lo + (hi - lo) * Rational(i, count + 1)));
  return out;
}

}  // namespace cbs
