#pragma once
// Exact integers and rationals (GMP).

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hlc {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

inline Integer to_integer_u64(uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

inline Rational make_rational(int64_t num, int64_t den = 1) {
  Rational q(to_integer(num), to_integer(den));
  q.canonicalize();
  return q;
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// base^exp for any integer exponent (base != 0 when exp < 0).
inline Rational rpow(const Rational& base, long exp) {
  Integer num, den;
  const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exp < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) {
  return q.get_str();
}

inline bool fits_int64(const Integer& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && sizeof(long) == 8;
}

inline int64_t to_int64(const Integer& z) {
  return static_cast<int64_t>(mpz_get_si(z.get_mpz_t()));
}

}  // namespace hlc
