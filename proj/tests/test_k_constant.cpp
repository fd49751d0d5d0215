#include <gtest/gtest.h>

#include "advcongest/k_constant.hpp"

using namespace advcongest;

namespace {

Rational pow10(int p) {
  mpz_class s;
  mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(p));
  return Rational(s);
}

}  // namespace

TEST(KConstant, FourDigitsFromAbove) {
  const KConstant k = compute_K(4, Rounding::away_from_zero);
  EXPECT_GE(k.value, Rational(11974, 10000));
  EXPECT_LE(k.value, Rational(11975, 10000));
  EXPECT_GE(k_polynomial(k.value), 0);
  EXPECT_EQ(k.precision, 4);
}

TEST(KConstant, OneDigitFromBelow) {
  const KConstant k = compute_K(1, Rounding::toward_zero);
  EXPECT_GE(k.value, Rational(11, 10));
  EXPECT_LT(k.value, Rational(12, 10));
  EXPECT_LE(k_polynomial(k.value), 0);
}

TEST(KConstant, TwelveDigitResidual) {
  const Rational v = compute_K(12, Rounding::away_from_zero).value;
  EXPECT_GE(k_polynomial(v), 0);
  EXPECT_LT(k_polynomial(v), 1 / pow10(11));
  EXPECT_EQ(upper_K(), v);
}

TEST(KConstant, BracketsTheRootAtEveryPrecision) {
  for (int p = 1; p <= 40; ++p) {
    const Rational lo = compute_K(p, Rounding::toward_zero).value;
    const Rational hi = compute_K(p, Rounding::away_from_zero).value;
    EXPECT_LT(lo, hi) << p;
    EXPECT_LE(hi - lo, 1 / pow10(p)) << p;
    EXPECT_LT(k_polynomial(lo), 0) << p;
    EXPECT_GT(k_polynomial(hi), 0) << p;
    EXPECT_GT(lo, 1);
    EXPECT_LT(hi, 2);
  }
}

TEST(KConstant, NestedAcrossPrecisions) {
  for (int p = 1; p < 30; ++p) {
    EXPECT_LE(compute_K(p + 1, Rounding::away_from_zero).value, compute_K(p, Rounding::away_from_zero).value);
    EXPECT_GE(compute_K(p + 1, Rounding::toward_zero).value, compute_K(p, Rounding::toward_zero).value);
  }
}

TEST(KConstant, RejectsNonPositivePrecision) {
  EXPECT_THROW(compute_K(0, Rounding::toward_zero), std::invalid_argument);
}
