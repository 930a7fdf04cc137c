#pragma once
// Multiplicative functions evaluated along polynomial values a*m^e - k by block sieving.

#include <cstdint>
#include <functional>
#include <vector>

#include "hlc/wide.hpp"

namespace hlc {

// Contribution of the prime power p^exp (exp >= 1).
using LocalFactor = std::function<u128(uint64_t p, int exp)>;

// Roots r in [0, p) of a r^e = k (mod p), e in {1, 2}.
std::vector<uint64_t> poly_roots_mod_p(int64_t a, int e, int64_t k, uint64_t p);

// Square root of t modulo an odd prime p (t a nonzero quadratic residue).
uint64_t sqrt_mod_prime(uint64_t t, uint64_t p);

// out[m - lo] = f(a m^e - k) for m in [lo, hi] with f(v) = scale * prod_{p^j || v} local(p, j)
// for v > 0, f(0) = zero_value and f(v) = 0 for v < 0.
std::vector<u128> sieve_multiplicative(int64_t a, int e, int64_t k, uint64_t lo, uint64_t hi,
                                       const LocalFactor& local, u128 scale, u128 zero_value, int threads = 1);

}  // namespace hlc
