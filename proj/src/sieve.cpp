#include "hlc/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlc/number_theory.hpp"
#include "hlc/parallel.hpp"

namespace hlc {

namespace {

constexpr uint64_t kBlock = uint64_t{1} << 15;

uint64_t mod_of(int64_t v, uint64_t m) {
  const int64_t r = v % static_cast<int64_t>(m);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(m) : r);
}

uint64_t isqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct PrimeRoots {
  uint64_t p;
  std::vector<uint64_t> roots;
};

}  // namespace

uint64_t sqrt_mod_prime(uint64_t t, uint64_t p) {
  t %= p;
  if (t == 0) return 0;
  if (p == 2) return t;
  if (powmod(t, (p - 1) / 2, p) != 1) throw std::domain_error("not a quadratic residue");
  if (p % 4 == 3) return powmod(t, (p + 1) / 4, p);
  // Tonelli-Shanks
  uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t c = powmod(z, q, p), x = powmod(t, (q + 1) / 2, p), b = powmod(t, q, p);
  int m = s;
  while (b != 1) {
    int i = 0;
    uint64_t bb = b;
    while (bb != 1) {
      bb = mulmod(bb, bb, p);
      ++i;
    }
    uint64_t w = c;
    for (int j = 0; j < m - i - 1; ++j) w = mulmod(w, w, p);
    x = mulmod(x, w, p);
    c = mulmod(w, w, p);
    b = mulmod(b, c, p);
    m = i;
  }
  return x;
}

std::vector<uint64_t> poly_roots_mod_p(int64_t a, int e, int64_t k, uint64_t p) {
  if (e != 1 && e != 2) throw std::invalid_argument("only linear and quadratic polynomials are supported");
  const uint64_t am = mod_of(a, p), km = mod_of(k, p);
  std::vector<uint64_t> roots;
  if (p < 64 || am == 0) {
    for (uint64_t r = 0; r < p; ++r) {
      const uint64_t re = e == 1 ? r : r * r % p;
      if (mulmod(am, re, p) == km) roots.push_back(r);
    }
    return roots;
  }
  const uint64_t t = mulmod(km, powmod(am, p - 2, p), p);
  if (e == 1) return {t};
  if (t == 0) return {0};
  if (powmod(t, (p - 1) / 2, p) != 1) return {};
  const uint64_t r = sqrt_mod_prime(t, p);
  return r == 0 ? std::vector<uint64_t>{0} : std::vector<uint64_t>{std::min(r, p - r), std::max(r, p - r)};
}

std::vector<u128> sieve_multiplicative(int64_t a, int e, int64_t k, uint64_t lo, uint64_t hi,
                                       const LocalFactor& local, u128 scale, u128 zero_value, int threads) {
  if (a <= 0) throw std::invalid_argument("leading coefficient must be positive");
  if (hi < lo) return {};
  auto value = [&](uint64_t m) -> __int128 {
    __int128 v = a;
    for (int i = 0; i < e; ++i) v *= m;
    return v - k;
  };
  const __int128 vmax = value(hi);
  if (vmax > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("polynomial values exceed 64 bits");
  const uint64_t limit = vmax > 0 ? isqrt(static_cast<uint64_t>(vmax)) : 1;
  if (limit > UINT32_MAX - 1) throw std::overflow_error("sieve bound too large");

  std::vector<PrimeRoots> table;
  for (uint32_t p : primes_up_to(static_cast<uint32_t>(limit))) {
    std::vector<uint64_t> r = poly_roots_mod_p(a, e, k, p);
    if (!r.empty()) table.push_back({p, std::move(r)});
  }

  std::vector<u128> out(hi - lo + 1);
  const uint64_t nblocks = (hi - lo) / kBlock + 1;
  auto do_block = [&](uint64_t b) {
    const uint64_t blo = lo + b * kBlock;
    const uint64_t bhi = std::min(hi, blo + kBlock - 1);
    const size_t len = bhi - blo + 1;
    std::vector<uint64_t> rem(len);
    std::vector<u128> acc(len, scale);
    std::vector<bool> active(len);
    for (size_t i = 0; i < len; ++i) {
      const __int128 v = value(blo + i);
      active[i] = v > 0;
      rem[i] = v > 0 ? static_cast<uint64_t>(v) : 0;
      if (v == 0) acc[i] = zero_value;
      if (v < 0) acc[i] = 0;
    }
    for (const auto& pr : table) {
      const uint64_t p = pr.p;
      for (uint64_t r : pr.roots) {
        uint64_t m = blo + (r + p - blo % p) % p;
        for (; m <= bhi; m += p) {
          const size_t i = m - blo;
          if (!active[i]) continue;
          int cnt = 0;
          while (rem[i] % p == 0) {
            rem[i] /= p;
            ++cnt;
          }
          acc[i] = checked_mul(acc[i], local(p, cnt));
        }
      }
    }
    for (size_t i = 0; i < len; ++i) {
      if (active[i] && rem[i] > 1) acc[i] = checked_mul(acc[i], local(rem[i], 1));
    }
    std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::ptrdiff_t>(blo - lo));
  };
  parallel_for(nblocks, threads, do_block);
  return out;
}

}  // namespace hlc
