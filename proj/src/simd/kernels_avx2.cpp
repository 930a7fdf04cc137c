#include <immintrin.h>

#include "hlc/simd/kernels.hpp"

namespace hlc::simd {

namespace {

struct Lanes {
  __m256i p;
  __m256i pinv_neg;
  explicit Lanes(const ModPrime& mp)
      : p(_mm256_set1_epi32(static_cast<int>(mp.p))), pinv_neg(_mm256_set1_epi32(static_cast<int>(mp.pinv_neg))) {}
};

inline __m256i add_mod(__m256i a, __m256i b, const Lanes& l) {
  const __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, l.p));
}

inline __m256i sub_mod(__m256i a, __m256i b, const Lanes& l) {
  const __m256i d = _mm256_sub_epi32(a, b);
  return _mm256_min_epu32(d, _mm256_add_epi32(d, l.p));
}

// a * b * 2^-32 mod p for a, b < p.
inline __m256i mont_mul(__m256i a, __m256i b, const Lanes& l) {
  const __m256i a_odd = _mm256_srli_epi64(a, 32);
  const __m256i b_odd = _mm256_srli_epi64(b, 32);
  const __m256i t_even = _mm256_mul_epu32(a, b);
  const __m256i t_odd = _mm256_mul_epu32(a_odd, b_odd);
  const __m256i m_even = _mm256_mul_epu32(t_even, l.pinv_neg);
  const __m256i m_odd = _mm256_mul_epu32(t_odd, l.pinv_neg);
  const __m256i u_even = _mm256_add_epi64(t_even, _mm256_mul_epu32(m_even, l.p));
  const __m256i u_odd = _mm256_add_epi64(t_odd, _mm256_mul_epu32(m_odd, l.p));
  const __m256i r = _mm256_blend_epi32(_mm256_srli_epi64(u_even, 32), u_odd, 0b10101010);
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, l.p));
}

inline uint32_t mont_mul1(uint32_t a, uint32_t b, const ModPrime& mp) {
  const uint64_t t = uint64_t{a} * b;
  const uint32_t m = static_cast<uint32_t>(t) * mp.pinv_neg;
  const uint32_t r = static_cast<uint32_t>((t + uint64_t{m} * mp.p) >> 32);
  return r >= mp.p ? r - mp.p : r;
}

inline __m256i load(const uint32_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(uint32_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void add_avx2(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp) {
  const Lanes l(mp);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) store(dst + i, add_mod(load(dst + i), load(src + i), l));
  for (; i < n; ++i) {
    const uint32_t s = dst[i] + src[i];
    dst[i] = s >= mp.p ? s - mp.p : s;
  }
}

void fma_const_avx2(uint32_t* dst, const uint32_t* src, uint32_t w, size_t n, const ModPrime& mp) {
  const Lanes l(mp);
  const uint32_t wm = mp.to_mont(w % mp.p);
  const __m256i wv = _mm256_set1_epi32(static_cast<int>(wm));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) store(dst + i, add_mod(load(dst + i), mont_mul(load(src + i), wv, l), l));
  for (; i < n; ++i) {
    const uint32_t s = dst[i] + mont_mul1(src[i], wm, mp);
    dst[i] = s >= mp.p ? s - mp.p : s;
  }
}

void mul_avx2(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp) {
  const Lanes l(mp);
  const __m256i r2 = _mm256_set1_epi32(static_cast<int>(mp.r2));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) store(dst + i, mont_mul(mont_mul(load(dst + i), load(src + i), l), r2, l));
  for (; i < n; ++i) dst[i] = mont_mul1(mont_mul1(dst[i], src[i], mp), mp.r2, mp);
}

void ntt_forward_avx2(uint32_t* a, const NttTables& t) {
  const size_t n = t.size();
  const ModPrime& mp = t.mp;
  const Lanes l(mp);
  for (size_t len = n >> 1; len >= 1; len >>= 1) {
    const uint32_t* w = t.tw_mont.data() + len;
    for (size_t i = 0; i < n; i += 2 * len) {
      if (len >= 8) {
        for (size_t j = 0; j < len; j += 8) {
          const __m256i u = load(a + i + j), v = load(a + i + j + len);
          store(a + i + j, add_mod(u, v, l));
          store(a + i + j + len, mont_mul(sub_mod(u, v, l), load(w + j), l));
        }
      } else {
        for (size_t j = 0; j < len; ++j) {
          const uint32_t u = a[i + j], v = a[i + j + len];
          const uint32_t s = u + v;
          a[i + j] = s >= mp.p ? s - mp.p : s;
          a[i + j + len] = mont_mul1(u >= v ? u - v : u + mp.p - v, w[j], mp);
        }
      }
    }
  }
}

void ntt_inverse_avx2(uint32_t* a, const NttTables& t) {
  const size_t n = t.size();
  const ModPrime& mp = t.mp;
  const Lanes l(mp);
  for (size_t len = 1; len < n; len <<= 1) {
    const uint32_t* w = t.itw_mont.data() + len;
    for (size_t i = 0; i < n; i += 2 * len) {
      if (len >= 8) {
        for (size_t j = 0; j < len; j += 8) {
          const __m256i u = load(a + i + j);
          const __m256i v = mont_mul(load(a + i + j + len), load(w + j), l);
          store(a + i + j, add_mod(u, v, l));
          store(a + i + j + len, sub_mod(u, v, l));
        }
      } else {
        for (size_t j = 0; j < len; ++j) {
          const uint32_t u = a[i + j], v = mont_mul1(a[i + j + len], w[j], mp);
          const uint32_t s = u + v;
          a[i + j] = s >= mp.p ? s - mp.p : s;
          a[i + j + len] = u >= v ? u - v : u + mp.p - v;
        }
      }
    }
  }
  const __m256i ninv = _mm256_set1_epi32(static_cast<int>(t.n_inv_mont));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) store(a + i, mont_mul(load(a + i), ninv, l));
  for (; i < n; ++i) a[i] = mont_mul1(a[i], t.n_inv_mont, mp);
}

}  // namespace

namespace detail {
const ModKernels avx2_kernels{add_avx2, fma_const_avx2, mul_avx2, ntt_forward_avx2, ntt_inverse_avx2};
}  // namespace detail

}  // namespace hlc::simd
