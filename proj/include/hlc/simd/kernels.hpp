#pragma once
// Modular arithmetic kernels over 31-bit primes, scalar reference plus AVX2 variants.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hlc::simd {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);

// Best available backend, overridable with HLC_SIMD=scalar|avx2.
Backend detect_backend();

struct ModPrime {
  uint32_t p;         // odd prime < 2^31
  uint32_t pinv_neg;  // -p^{-1} mod 2^32
  uint32_t r2;        // 2^64 mod p

  uint32_t to_mont(uint32_t x) const;  // x * 2^32 mod p
};

ModPrime make_prime(uint32_t p);

// Length-2^log_n twiddles: tw[len + j] = w_{2len}^j for power-of-two len, j < len.
struct NttTables {
  ModPrime mp;
  int log_n = 0;
  std::vector<uint32_t> tw, itw;            // plain residues
  std::vector<uint32_t> tw_mont, itw_mont;  // Montgomery form
  uint32_t n_inv = 0;
  uint32_t n_inv_mont = 0;

  size_t size() const { return size_t{1} << log_n; }
};

// Cached per (p, log_n); p - 1 must be divisible by 2^log_n.
const NttTables& ntt_tables(uint32_t p, int log_n);

struct ModKernels {
  // dst[i] = dst[i] + src[i]
  void (*add)(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp);
  // dst[i] = dst[i] + w * src[i]
  void (*fma_const)(uint32_t* dst, const uint32_t* src, uint32_t w, size_t n, const ModPrime& mp);
  // dst[i] = dst[i] * src[i]
  void (*mul)(uint32_t* dst, const uint32_t* src, size_t n, const ModPrime& mp);
  // Decimation in frequency, natural order in, bit-reversed out.
  void (*ntt_forward)(uint32_t* a, const NttTables& t);
  // Decimation in time, bit-reversed in, natural out, scaled by 1/n.
  void (*ntt_inverse)(uint32_t* a, const NttTables& t);
};

const ModKernels& kernels(Backend b);
const ModKernels& active_kernels();

namespace detail {
extern const ModKernels scalar_kernels;
#if defined(HLC_HAVE_AVX2)
extern const ModKernels avx2_kernels;
#endif
}  // namespace detail

}  // namespace hlc::simd
