#include "hlc/wide.hpp"

#include <algorithm>

namespace hlc {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_u128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  u128 v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("not a decimal integer: " + std::string(text));
    u128 next;
    if (__builtin_mul_overflow(v, u128{10}, &next) ||
        __builtin_add_overflow(next, u128(ch - '0'), &next)) {
      throw std::invalid_argument("integer does not fit in 128 bits: " + std::string(text));
    }
    v = next;
  }
  return v;
}

long double to_long_double(u128 v) {
  const auto hi = static_cast<uint64_t>(v >> 64);
  const auto lo = static_cast<uint64_t>(v);
  return static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo);
}

}  // namespace hlc
