#include "cbs/exact.hpp"

#include <string>

#include "cbs/errors.hpp"

namespace cbs {

Integer binomial(long n, long k) {
  if (n < 0) throw UsageError("binomial: n must be >= 0 (got " + std::to_string(n) + ")");
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer central_binomial(long n) {
  if (n < 0) throw UsageError("central_binomial: n must be >= 0 (got " + std::to_string(n) + ")");
  Integer c = 1;
  for (long j = 0; j < n; ++j) {
    c *= 2 * (2 * j + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j + 1));
  }
  return c;
}

namespace {

// (F_k, F_{k+1}) for k >= 0.
void fib_pair(unsigned long k, Integer& f, Integer& g) {
  f = 0;
  g = 1;
  int top = 63;
  while (top >= 0 && !((k >> top) & 1UL)) --top;
  for (int b = top; b >= 0; --b) {
    Integer c = f * (2 * g - f);  // F_{2j}
    Integer d = f * f + g * g;    // F_{2j+1}
    if ((k >> b) & 1UL) {
      f = d;
      g = c + d;
    } else {
      f = c;
      g = d;
    }
  }
}

}  // namespace

FibLucas fib_lucas(long n) {
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Integer f, g;
  fib_pair(k, f, g);
  Integer lucas = 2 * g - f;  // L_k = F_{k-1} + F_{k+1} = 2F_{k+1} - F_k
  if (n < 0) {
    if (k % 2 == 0) f = -f;
    else lucas = -lucas;
  }
  return FibLucas{f, lucas};
}

Rational harmonic(long n) {
  if (n < 0) throw UsageError("harmonic: n must be >= 0 (got " + std::to_string(n) + ")");
  // Common-denominator accumulation avoids a gcd per step.
  Integer num = 0, den = 1;
  for (long k = 1; k <= n; ++k) {
    num = num * k + den;
    den *= k;
  }
  Rational h(num, den);
  h.canonicalize();
  return h;
}

}  // namespace cbs
