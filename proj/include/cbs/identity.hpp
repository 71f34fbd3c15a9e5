#pragma once

// Finite identity checks. Exact checks use only Integer/Rational arithmetic, so a
// failure is a genuine counterexample and is reported with both sides.

#include <cstdint>
#include <string>
#include <vector>

#include "cbs/exact.hpp"
#include "cbs/mp.hpp"

namespace cbs {

struct IdentityFailure {
  std::string params;
  std::string lhs;
  std::string rhs;
};

struct IdentityReport {
  std::string id;
  std::string range;
  bool pass = true;
  std::vector<IdentityFailure> failures;
  std::vector<std::string> notes;

  void fail(std::string params, std::string lhs, std::string rhs);
};

/// sum C(2k,k) C(2n-2k,n-k) = 4^n and the alternating form
/// sum (-1)^k C(2k,k) C(2n-2k,n-k) = [n even] C(n,n/2) 2^n, for 0 <= n <= n_max.
IdentityReport check_convolution(long n_max);

/// Weighted convolutions for 1 <= n <= n_max:
///   sum k(n-k) c_k c_(n-k) = n(n-1) 2^(2n-3)
///   sum (-1)^k k(n-k) c_k c_(n-k) = 0 for odd n
///   sum k c_k c_(n-k) = n 2^(2n-1)
///   sum_(k=0..n) k^2 c_k c_(n-k) = n(3n+1) 2^(2n-3)
/// where c_k = C(2k,k). The k^2 sum with upper limit n-1 is evaluated too and
/// reported as a note.
IdentityReport check_weighted_convolution(long n_max);

/// sum_k 4^(n-k) C(n,k) C(2k,k) t^k = sum_k C(2k,k) C(2n-2k,n-k) (1+t)^k for every
/// n <= n_max and t in t_values. With polynomial = true the two sides are compared
/// coefficient by coefficient in t as well.
IdentityReport check_binomial_transform(long n_max, const std::vector<long>& t_values, bool polynomial = false);

/// Sign-split transforms for truncated sequences:
///   sum ((-1)^ceil(n/2) + (-1)^floor(n/2)) f_n = 2 sum (-1)^k f_(2k)
///   sum ((-1)^ceil(n/2) - (-1)^floor(n/2)) f_n = -2 sum (-1)^k f_(2k+1)
/// Each sequence is truncated to its first n_max + 1 entries. A note records
/// whether the difference identity with +2 would also hold.
IdentityReport check_sign_split(const std::vector<std::vector<Rational>>& sequences, long n_max);

/// `count` sequences with random lengths in [1, max_len] and entries p/q,
/// |p| <= 1000, 1 <= q <= 1000. Deterministic for a given seed.
std::vector<std::vector<Rational>> random_rational_sequences(int count, int max_len, std::uint64_t seed);

/// f_n = C(2n,n) x^n / 4^n for n < len.
std::vector<Rational> central_sequence(const Rational& x, int len);

/// Re/Im of arcsin((1+i)x) against arctan/artanh of sqrt2 x / sqrt(sqrt(1+4x^4) + 1),
/// tolerance 10^(3 - digits).
IdentityReport check_arcsin_split(const std::vector<Real>& xs, const PrecisionContext& ctx);

/// Derivatives of arctan/artanh(x / sqrt(1 + sqrt(1 + x^4))):
///   closed first derivatives vs central differences of the functions,
///   closed second derivatives vs central differences of the closed first derivatives,
///   with step h = 10^(-digits/3) and tolerance 100 h^2;
///   products 1/(2(1+x^4)) and x^2(3x^4-1)/(2(1+x^4)^3) to 10^(5 - digits).
IdentityReport check_map_derivatives(const std::vector<Real>& xs, const PrecisionContext& ctx);

/// sum_(k=0..v-1) C(v-1,k) (-1)^k / (2k+2)^2 = H_v / (4v) for 1 <= v <= v_max.
IdentityReport check_harmonic_integral(long v_max);

/// Evenly spaced interior points of (lo, hi): lo + (hi-lo) i/(count+1), i = 1..count.
std::vector<Real> sample_points(const Rational& lo, const Rational& hi, int count, const PrecisionContext& ctx);

}  // namespace cbs
