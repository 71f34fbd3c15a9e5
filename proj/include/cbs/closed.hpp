#pragma once

#include "cbs/complex.hpp"
#include "cbs/series.hpp"

namespace cbs {

/// h(z) = 2 sqrt(z^m) / sqrt(sqrt(p^2 + 16 z^(2m)) + p). p > 0.
Complex h_map(const Complex& z, long m, const Real& p, const PrecisionContext& ctx);

/// r^(+-)(z) = sqrt((sqrt(A) +- 4 z^m) / A), A = p^2 + 16 z^(2m). sign is +1 or -1.
Complex r_map(const Complex& z, long m, const Real& p, int sign, const PrecisionContext& ctx);

/// t^(+-)(z) = (8 z^m -+ sqrt(A)) sqrt((sqrt(A) +- 4 z^m) / A^3).
Complex t_map(const Complex& z, long m, const Real& p, int sign, const PrecisionContext& ctx);

struct ClosedValue {
  Real value;
  Real residue;  // |Im| of the complex evaluation; 0 for real-only paths
};

/// Closed form without the residue check.
ClosedValue closed_value_detailed(const FamilySpec& spec, const PrecisionContext& ctx);

/// Closed form; NumericFailure when the imaginary residue exceeds 10^(3 - digits).
Real closed_value(const FamilySpec& spec, const PrecisionContext& ctx);

}  // namespace cbs
