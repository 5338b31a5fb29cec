#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "pfaffcheck/errors.hpp"

namespace pfaffcheck {

/// Exact rational number. GMP keeps every result of arithmetic canonical
/// (gcd(num, den) = 1, den > 0); values built from a numerator/denominator
/// pair go through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "n" or "n/d" with an optional leading sign.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw parse_error("bad rational '" + text + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return make_rational(n, d);
}

inline Rational rational_pow(const Rational& base, unsigned k) {
  Rational out(1);
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace pfaffcheck
