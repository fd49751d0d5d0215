#pragma once

#include "advcongest/rational.hpp"

namespace advcongest {

enum class Rounding { toward_zero, away_from_zero };

/// Decimal bracket of K, the real root in (1, 2) of x^3 - x^2/2 - 1.
struct KConstant {
  Rational value;
  Rounding rounding = Rounding::away_from_zero;
  int precision = 0;
};

/// p(x) = x^3 - x^2/2 - 1.
Rational k_polynomial(const Rational& x);

/// Bisects on the grid j / 10^precision over [1, 2] with exact arithmetic, so
/// the returned endpoint has denominator dividing 10^precision and the final
/// bracket has width exactly 10^-precision. toward_zero gives the endpoint
/// with p <= 0 (below K), away_from_zero the one with p >= 0 (above K).
KConstant compute_K(int precision, Rounding rounding);

/// Default alpha for the incremental solver: compute_K(precision, away_from_zero).
Rational upper_K(int precision = 12);

}  // namespace advcongest
