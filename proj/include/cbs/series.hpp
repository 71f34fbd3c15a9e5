#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbs/errors.hpp"
#include "cbs/expr.hpp"
#include "cbs/mp.hpp"

namespace cbs {

enum class SignPattern { CeilHalf, FloorHalf, Alternating, Plus };

/// (-1)^ceil(n/2), (-1)^floor(n/2), (-1)^n or +1. n >= 0.
int sign(SignPattern pattern, long n);

enum class Family {
  F1, F2, F3, F4, F5, F6,
  T1, T2, T3, T4, T5, T6,
  C1, C2,
  G1, G2, G3, G4, G5, G6, G7, G8, G9, G10, G11, G12,
  H1, H2, H3, H4,
  I1, I2, I3,
  J1
};

enum class Sequence { Fibonacci, Lucas };

std::string_view family_name(Family f);
/// Case-insensitive; throws UsageError on an unknown id.
Family parse_family(std::string_view name);
const std::vector<Family>& all_families();
SignPattern sign_pattern(Family f);
/// One-line description of the summand, e.g. "(-1)^ceil(n/2) C(2n,n) x^n / 4^n".
std::string family_summary(Family f);

struct FamilySpec {
  Family id = Family::F1;
  std::optional<Expr> x;    // F, C, H
  std::optional<Expr> phi;  // T
  std::optional<Expr> p;    // G
  long m = 0;               // G
  long s = 0;               // G
  long r = 0;               // I1, I2
  std::optional<Sequence> seq;  // G; overrides the family's native sequence
};

Sequence effective_sequence(const FamilySpec& spec);
/// "F3 x=1/2", "G5 m=1 s=0 p=8 seq=F", ...
std::string describe(const FamilySpec& spec);

enum class Regime {
  Certified,  // strict interior; a proven tail bound exists
  Boundary,   // endpoint of the domain; only uncertified fixed-N sums
};

/// Throws UsageError for missing parameters or parameters outside the domain.
Regime validate(const FamilySpec& spec, const PrecisionContext& ctx);

struct EvalResult {
  Real value;
  long terms_used = 0;
  std::optional<Real> truncation_bound;  // empty when no bound is available
  Real rounding_bound;
  bool converged = false;
};

class ConvergenceError : public NumericFailure {
 public:
  ConvergenceError(const std::string& what, EvalResult best) : NumericFailure(what), best_(std::move(best)) {}
  const EvalResult& best() const { return best_; }

 private:
  EvalResult best_;
};

constexpr long kDefaultMaxTerms = 10'000'000;

/// The n-th summand from exact integer ingredients.
Real term(const FamilySpec& spec, long n, const PrecisionContext& ctx);

/// Terms 0..N. truncation_bound is empty at domain endpoints. converged is false.
EvalResult sum_fixed(const FamilySpec& spec, long N, const PrecisionContext& ctx);

/// Bound on |sum of terms n > N|. Empty when the model's ratio estimate is not
/// yet below 1 at this N. Throws UncertifiedError at domain endpoints.
std::optional<Real> tail_bound(const FamilySpec& spec, long N, const PrecisionContext& ctx);

/// Sums until truncation_bound + rounding_bound <= target. Throws UncertifiedError
/// at endpoints and ConvergenceError when max_terms is not enough.
EvalResult sum_adaptive(const FamilySpec& spec, const Real& target, const PrecisionContext& ctx,
                        long max_terms = kDefaultMaxTerms);

}  // namespace cbs
