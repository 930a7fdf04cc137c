#pragma once
// Exact truncated products of power series with nonnegative integer coefficients,
// computed modulo several NTT primes and recombined by CRT.

#include <cstdint>
#include <utility>
#include <vector>

#include "hlc/simd/kernels.hpp"
#include "hlc/wide.hpp"

namespace hlc {

struct SparseSeries {
  std::vector<std::pair<uint64_t, uint64_t>> terms;  // (exponent, coefficient), exponents increasing

  // Sum of coefficients with exponent <= nmax.
  long double total(uint64_t nmax) const;
  bool operator==(const SparseSeries&) const = default;
};

enum class ConvolutionStrategy { Auto, Sparse, Ntt };

struct RnsOptions {
  ConvolutionStrategy strategy = ConvolutionStrategy::Auto;
  int threads = 1;
  simd::Backend backend = simd::Backend::Scalar;
  bool use_detected_backend = true;
};

inline constexpr int kMaxNttLog = 25;
inline constexpr uint64_t kMaxSeriesDegree = (uint64_t{1} << (kMaxNttLog - 1)) - 1;

// 31-bit primes p with 2^25 | p - 1, largest first.
const std::vector<uint32_t>& rns_primes();

// Number of primes needed so that their product exceeds 2^log2_bound.
int rns_prime_count(double log2_bound);

// Coefficients 0..nmax of prod factors. Exact provided every true coefficient is below 2^log2_bound;
// throws CountOverflow if a coefficient does not fit 128 bits.
std::vector<u128> rns_series_product(const std::vector<SparseSeries>& factors, uint64_t nmax, double log2_bound,
                                     const RnsOptions& opt = {});

}  // namespace hlc
