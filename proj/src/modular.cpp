#include "hlc/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlc/number_theory.hpp"
#include "hlc/parallel.hpp"

namespace hlc {

namespace {

struct Factor {
  SparseSeries series;
  int multiplicity;
};

int ceil_log2(uint64_t v) {
  int l = 0;
  while ((uint64_t{1} << l) < v) ++l;
  return l;
}

class PrimeWorker {
 public:
  PrimeWorker(uint32_t p, uint64_t nmax, const RnsOptions& opt, const simd::ModKernels& k)
      : mp_(simd::make_prime(p)), nmax_(nmax), opt_(opt), k_(k) {
    log_n_ = std::max(1, ceil_log2(2 * nmax + 1));
    if (log_n_ > kMaxNttLog) throw std::length_error("series too long for the NTT primes");
  }

  std::vector<uint32_t> run(const std::vector<Factor>& factors) {
    std::vector<uint32_t> acc;
    bool started = false;
    for (const auto& f : factors) {
      const std::vector<uint32_t> dense = densify(f.series);
      // acc *= f^mult by binary powering
      std::vector<uint32_t> power;
      bool have_power = false;
      std::vector<uint32_t> base = dense;
      bool base_is_factor = true;
      for (int e = f.multiplicity; e > 0; e >>= 1) {
        if (e & 1) {
          if (!have_power) {
            power = base;
            have_power = true;
          } else {
            power = multiply(power, base, base_is_factor ? &f.series : nullptr);
          }
        }
        if (e > 1) {
          base = multiply(base, base, base_is_factor ? &f.series : nullptr);
          base_is_factor = false;
        }
      }
      if (!started) {
        acc = std::move(power);
        started = true;
      } else {
        acc = multiply(acc, power, nullptr);
      }
    }
    if (!started) {
      acc.assign(nmax_ + 1, 0);
      acc[0] = 1;
    }
    return acc;
  }

 private:
  std::vector<uint32_t> densify(const SparseSeries& s) const {
    std::vector<uint32_t> d(nmax_ + 1, 0);
    for (const auto& [e, c] : s.terms) {
      if (e > nmax_) break;
      d[e] = static_cast<uint32_t>((d[e] + c % mp_.p) % mp_.p);
    }
    return d;
  }

  size_t nonzeros(const std::vector<uint32_t>& v) const {
    return static_cast<size_t>(std::count_if(v.begin(), v.end(), [](uint32_t x) { return x != 0; }));
  }

  bool prefer_sparse(size_t nnz) const {
    if (opt_.strategy == ConvolutionStrategy::Sparse) return true;
    if (opt_.strategy == ConvolutionStrategy::Ntt) return false;
    const double sparse_cost = static_cast<double>(nnz) * static_cast<double>(nmax_ + 1);
    const double L = std::ldexp(1.0, log_n_);
    const double ntt_cost = 3.0 * L * log_n_ + 2.0 * L;
    return sparse_cost <= ntt_cost;
  }

  // a * b truncated at nmax; `b_sparse` may describe b exactly.
  std::vector<uint32_t> multiply(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                 const SparseSeries* b_sparse) {
    const size_t nnz_b = b_sparse ? b_sparse->terms.size() : nonzeros(b);
    const size_t nnz_a = nonzeros(a);
    if (prefer_sparse(std::min(nnz_a, nnz_b))) {
      const bool use_b = nnz_b <= nnz_a;
      const std::vector<uint32_t>& dense = use_b ? a : b;
      const std::vector<uint32_t>& sparse = use_b ? b : a;
      std::vector<uint32_t> out(nmax_ + 1, 0);
      for (uint64_t e = 0; e <= nmax_; ++e) {
        if (sparse[e] == 0) continue;
        k_.fma_const(out.data() + e, dense.data(), sparse[e], nmax_ + 1 - e, mp_);
      }
      return out;
    }
    const simd::NttTables& t = simd::ntt_tables(mp_.p, log_n_);
    const size_t L = t.size();
    std::vector<uint32_t> fa(L, 0);
    std::copy(a.begin(), a.end(), fa.begin());
    k_.ntt_forward(fa.data(), t);
    if (&a == &b) {
      k_.mul(fa.data(), fa.data(), L, mp_);
    } else {
      std::vector<uint32_t> fb(L, 0);
      std::copy(b.begin(), b.end(), fb.begin());
      k_.ntt_forward(fb.data(), t);
      k_.mul(fa.data(), fb.data(), L, mp_);
    }
    k_.ntt_inverse(fa.data(), t);
    fa.resize(nmax_ + 1);
    return fa;
  }

  simd::ModPrime mp_;
  uint64_t nmax_;
  RnsOptions opt_;
  const simd::ModKernels& k_;
  int log_n_ = 1;
};

}  // namespace

long double SparseSeries::total(uint64_t nmax) const {
  long double s = 0;
  for (const auto& [e, c] : terms) {
    if (e > nmax) break;
    s += static_cast<long double>(c);
  }
  return s;
}

const std::vector<uint32_t>& rns_primes() {
  static const std::vector<uint32_t> primes{2013265921u, 2113929217u, 1811939329u, 1711276033u, 1107296257u};
  return primes;
}

int rns_prime_count(double log2_bound) {
  double acc = 0;
  int count = 0;
  for (uint32_t p : rns_primes()) {
    if (acc > log2_bound) break;
    acc += std::log2(static_cast<double>(p));
    ++count;
  }
  if (acc <= log2_bound) throw CountOverflow("coefficient bound exceeds the CRT range");
  return count;
}

std::vector<u128> rns_series_product(const std::vector<SparseSeries>& factors, uint64_t nmax, double log2_bound,
                                     const RnsOptions& opt) {
  if (nmax > kMaxSeriesDegree) throw std::length_error("series degree exceeds the supported maximum");
  const int np = rns_prime_count(std::max(1.0, log2_bound));
  const simd::ModKernels& kern = opt.use_detected_backend ? simd::active_kernels() : simd::kernels(opt.backend);

  std::vector<Factor> grouped;
  for (const auto& f : factors) {
    if (!grouped.empty() && grouped.back().series == f) {
      ++grouped.back().multiplicity;
    } else {
      grouped.push_back({f, 1});
    }
  }

  const std::vector<uint32_t>& primes = rns_primes();
  std::vector<std::vector<uint32_t>> residues(static_cast<size_t>(np));
  auto work = [&](int i) {
    PrimeWorker w(primes[static_cast<size_t>(i)], nmax, opt, kern);
    residues[static_cast<size_t>(i)] = w.run(grouped);
  };
  parallel_for(static_cast<uint64_t>(np), std::min(resolve_threads(opt.threads), np),
               [&](uint64_t i) { work(static_cast<int>(i)); });

  // Garner mixed-radix reconstruction.
  std::vector<std::vector<uint64_t>> inv(static_cast<size_t>(np), std::vector<uint64_t>(static_cast<size_t>(np), 0));
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < i; ++j) inv[i][j] = powmod(primes[j] % primes[i], primes[i] - 2, primes[i]);
  }
  std::vector<u128> out(nmax + 1);
  std::vector<uint64_t> digit(static_cast<size_t>(np));
  for (uint64_t n = 0; n <= nmax; ++n) {
    for (int i = 0; i < np; ++i) {
      const uint64_t p = primes[i];
      uint64_t x = residues[i][n];
      for (int j = 0; j < i; ++j) x = (x + p - digit[j] % p) % p * inv[i][j] % p;
      digit[i] = x;
    }
    u128 v = digit[np - 1];
    for (int i = np - 2; i >= 0; --i) v = checked_add(checked_mul(v, primes[i]), digit[i]);
    out[n] = v;
  }
  return out;
}

}  // namespace hlc
