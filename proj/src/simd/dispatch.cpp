#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "hlc/number_theory.hpp"
#include "hlc/simd/kernels.hpp"

namespace hlc::simd {

namespace {

uint32_t primitive_root(uint32_t p) {
  const Factorization f = factorize_u64(p - 1);
  for (uint32_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& pe : f.factors) {
      if (powmod(g, (p - 1) / pe.first, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
#if defined(HLC_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect_backend() {
  if (const char* env = std::getenv("HLC_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

uint32_t ModPrime::to_mont(uint32_t x) const {
  return static_cast<uint32_t>((static_cast<uint64_t>(x) << 32) % p);
}

ModPrime make_prime(uint32_t p) {
  if (p < 3 || p >= (1u << 31) || (p & 1) == 0) throw std::invalid_argument("modulus must be an odd prime < 2^31");
  // Newton iteration for p^{-1} mod 2^32.
  uint32_t inv = p;
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
  const uint64_t r = (uint64_t{1} << 32) % p;
  return {p, static_cast<uint32_t>(0u - inv), static_cast<uint32_t>(r * r % p)};
}

const NttTables& ntt_tables(uint32_t p, int log_n) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, int>, std::unique_ptr<NttTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, log_n}];
  if (slot) return *slot;
  if (log_n < 1 || ((p - 1) & ((uint32_t{1} << log_n) - 1)) != 0) {
    throw std::invalid_argument("prime does not support this transform length");
  }
  auto t = std::make_unique<NttTables>();
  t->mp = make_prime(p);
  t->log_n = log_n;
  const size_t n = size_t{1} << log_n;
  const uint64_t g = primitive_root(p);
  t->tw.assign(n, 0);
  t->itw.assign(n, 0);
  for (size_t len = 1; len < n; len <<= 1) {
    const uint64_t w = powmod(g, (p - 1) / (2 * len), p);
    const uint64_t iw = powmod(w, p - 2, p);
    uint64_t x = 1, ix = 1;
    for (size_t j = 0; j < len; ++j) {
      t->tw[len + j] = static_cast<uint32_t>(x);
      t->itw[len + j] = static_cast<uint32_t>(ix);
      x = x * w % p;
      ix = ix * iw % p;
    }
  }
  t->tw_mont.resize(n);
  t->itw_mont.resize(n);
  for (size_t i = 0; i < n; ++i) {
    t->tw_mont[i] = t->mp.to_mont(t->tw[i]);
    t->itw_mont[i] = t->mp.to_mont(t->itw[i]);
  }
  t->n_inv = static_cast<uint32_t>(powmod(n % p, p - 2, p));
  t->n_inv_mont = t->mp.to_mont(t->n_inv);
  slot = std::move(t);
  return *slot;
}

const ModKernels& kernels(Backend b) {
#if defined(HLC_HAVE_AVX2)
  if (b == Backend::Avx2) {
    if (!backend_available(Backend::Avx2)) throw std::runtime_error("AVX2 not supported on this CPU");
    return detail::avx2_kernels;
  }
#else
  if (b == Backend::Avx2) throw std::runtime_error("AVX2 kernels not built");
#endif
  return detail::scalar_kernels;
}

const ModKernels& active_kernels() {
  static const Backend b = detect_backend();
  return kernels(b);
}

}  // namespace hlc::simd
