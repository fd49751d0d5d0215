#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace advcongest {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p" or "p/q" (q > 0, no sign on q). Throws std::invalid_argument on
/// anything else, including decimals and whitespace.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" text.
std::string to_string(const Rational& value);

/// Largest integer <= value.
mpz_class floor(const Rational& value);
/// Smallest integer >= value.
mpz_class ceil(const Rational& value);

double to_double(const Rational& value);

/// A Rational or +infinity. Infinity marks "no finite factor suffices".
class ExtendedRational {
 public:
  ExtendedRational() : value_(Rational(0)) {}
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.value_.reset();
    return r;
  }

  bool is_infinite() const { return !value_.has_value(); }
  /// Requires !is_infinite().
  const Rational& value() const { return *value_; }

  friend bool operator==(const ExtendedRational& lhs, const ExtendedRational& rhs) {
    if (lhs.is_infinite() || rhs.is_infinite()) return lhs.is_infinite() == rhs.is_infinite();
    return *lhs.value_ == *rhs.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& lhs,
                                          const ExtendedRational& rhs) {
    if (lhs.is_infinite() || rhs.is_infinite()) {
      return static_cast<int>(lhs.is_infinite()) <=> static_cast<int>(rhs.is_infinite());
    }
    const int c = cmp(*lhs.value_, *rhs.value_);
    return c <=> 0;
  }

 private:
  std::optional<Rational> value_;
};

/// "inf" for infinity, otherwise to_string(value).
std::string to_string(const ExtendedRational& value);
std::ostream& operator<<(std::ostream& os, const ExtendedRational& value);

}  // namespace advcongest
