#pragma once
// 128-bit unsigned counts with checked arithmetic.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hlc {

using u128 = unsigned __int128;

class CountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow("128-bit count overflow in addition");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow("128-bit count overflow in multiplication");
  return r;
}

std::string to_string(u128 v);

// Decimal digits only; throws std::invalid_argument on anything else or on overflow.
u128 parse_u128(std::string_view text);

long double to_long_double(u128 v);

}  // namespace hlc
