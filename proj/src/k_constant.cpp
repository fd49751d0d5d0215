#include "advcongest/k_constant.hpp"

#include <stdexcept>

namespace advcongest {

Rational k_polynomial(const Rational& x) {
  Rational x2 = x * x;
  return Rational(x2 * x - x2 / 2 - 1);
}

KConstant compute_K(int precision, Rounding rounding) {
  if (precision < 1) throw std::invalid_argument("precision must be positive");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(precision));

  // Invariant: p(lo / scale) < 0 < p(hi / scale).
  mpz_class lo = scale;
  mpz_class hi = 2 * scale;
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    Rational x(mid, scale);
    x.canonicalize();
    if (sgn(k_polynomial(x)) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Rational value(rounding == Rounding::toward_zero ? lo : hi, scale);
  value.canonicalize();
  return KConstant{std::move(value), rounding, precision};
}

Rational upper_K(int precision) { return compute_K(precision, Rounding::away_from_zero).value; }

}  // namespace advcongest
