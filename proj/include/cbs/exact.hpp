#pragma once

#include <gmpxx.h>

namespace cbs {

using Integer = mpz_class;
using Rational = mpq_class;

/// C(n, k); 0 when k < 0 or k > n. Throws UsageError for n < 0.
Integer binomial(long n, long k);

/// C(2n, n) built up through C(2(j+1), j+1) = C(2j, j) * 2(2j+1)/(j+1).
Integer central_binomial(long n);

struct FibLucas {
  Integer fib;
  Integer lucas;
};

/// (F_n, L_n) by fast doubling; negative n via F_{-n} = (-1)^{n-1} F_n, L_{-n} = (-1)^n L_n.
FibLucas fib_lucas(long n);

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
Rational harmonic(long n);

}  // namespace cbs
