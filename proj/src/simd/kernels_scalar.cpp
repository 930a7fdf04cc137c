#include "hlc/simd/kernels.hpp"

namespace hlc::simd {

namespace {

void add_scalar(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp) {
  const uint32_t p = mp.p;
  for (size_t i = 0; i < n; ++i) {
    const uint32_t s = dst[i] + src[i];
    dst[i] = s >= p ? s - p : s;
  }
}

void fma_const_scalar(uint32_t* dst, const uint32_t* src, uint32_t w, size_t n, const ModPrime& mp) {
  const uint64_t p = mp.p;
  for (size_t i = 0; i < n; ++i) dst[i] = static_cast<uint32_t>((dst[i] + uint64_t{w} * src[i]) % p);
}

void mul_scalar(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp) {
  const uint64_t p = mp.p;
  for (size_t i = 0; i < n; ++i) dst[i] = static_cast<uint32_t>(uint64_t{dst[i]} * src[i] % p);
}

void ntt_forward_scalar(uint32_t* a, const NttTables& t) {
  const size_t n = t.size();
  const uint64_t p = t.mp.p;
  for (size_t len = n >> 1; len >= 1; len >>= 1) {
    const uint32_t* w = t.tw.data() + len;
    for (size_t i = 0; i < n; i += 2 * len) {
      for (size_t j = 0; j < len; ++j) {
        const uint64_t u = a[i + j], v = a[i + j + len];
        a[i + j] = static_cast<uint32_t>((u + v) % p);
        a[i + j + len] = static_cast<uint32_t>((u + p - v) * w[j] % p);
      }
    }
  }
}

void ntt_inverse_scalar(uint32_t* a, const NttTables& t) {
  const size_t n = t.size();
  const uint64_t p = t.mp.p;
  for (size_t len = 1; len < n; len <<= 1) {
    const uint32_t* w = t.itw.data() + len;
    for (size_t i = 0; i < n; i += 2 * len) {
      for (size_t j = 0; j < len; ++j) {
        const uint64_t u = a[i + j], v = uint64_t{a[i + j + len]} * w[j] % p;
        a[i + j] = static_cast<uint32_t>((u + v) % p);
        a[i + j + len] = static_cast<uint32_t>((u + p - v) % p);
      }
    }
  }
  for (size_t i = 0; i < n; ++i) a[i] = static_cast<uint32_t>(uint64_t{a[i]} * t.n_inv % p);
}

}  // namespace

namespace detail {
const ModKernels scalar_kernels{add_scalar, fma_const_scalar, mul_scalar, ntt_forward_scalar, ntt_inverse_scalar};
}  // namespace detail

}  // namespace hlc::simd
