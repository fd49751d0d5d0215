#include "advcongest/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace advcongest {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  // -?[0-9]+(/[1-9][0-9]*)?
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  if (!all_digits(num)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const std::string_view den = body.substr(slash + 1);
    if (!all_digits(den) || den.front() == '0') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
  }
  Rational value(std::string(text), 10);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

mpz_class floor(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

mpz_class ceil(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& value) {
  return os << to_string(value);
}

}  // namespace advcongest
