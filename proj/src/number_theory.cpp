#include "hlc/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hlc {

namespace {

constexpr uint32_t kTrialLimit = 100000;

const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

uint64_t pollard_brent(uint64_t n) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto f = [&](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const uint64_t m = 128;
    uint64_t r = 1;
    do {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      uint64_t k = 0;
      do {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rest(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const uint64_t d = pollard_brent(n);
  factor_rest(d, out);
  factor_rest(n / d, out);
}

}  // namespace

Integer Factorization::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) v *= ipow(to_integer_u64(p), static_cast<unsigned long>(e));
  return v;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases proven sufficient below 2^64.
  for (uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
  std::vector<uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factorize_u64(uint64_t n) {
  if (n == 0) throw std::invalid_argument("cannot factorize 0");
  Factorization f;
  for (uint32_t p : small_primes()) {
    if (static_cast<uint64_t>(p) * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (n == 1) return f;
  const uint64_t bound = static_cast<uint64_t>(kTrialLimit) * kTrialLimit;
  if (n < bound) {
    f.factors.emplace_back(n, 1);
    return f;
  }
  std::vector<uint64_t> rest;
  factor_rest(n, rest);
  std::sort(rest.begin(), rest.end());
  for (uint64_t p : rest) {
    if (!f.factors.empty() && f.factors.back().first == p) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(p, 1);
    }
  }
  return f;
}

Factorization factorize(int64_t n) {
  if (n == 0) throw std::invalid_argument("cannot factorize 0");
  const uint64_t mag = n < 0 ? 0 - static_cast<uint64_t>(n) : static_cast<uint64_t>(n);
  Factorization f = factorize_u64(mag);
  f.sign = n < 0 ? -1 : 1;
  return f;
}

int valuation(int64_t n, uint64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of 0");
  uint64_t m = n < 0 ? 0 - static_cast<uint64_t>(n) : static_cast<uint64_t>(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int kronecker(int64_t a, int64_t n) {
  static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int k = 1;
  int v = 0;
  while ((n & 1) == 0) {
    n /= 2;
    ++v;
  }
  if (v & 1) k = tab2[a & 7];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // Jacobi (a | n), n odd positive.
  uint64_t un = static_cast<uint64_t>(n);
  int64_t r = a % n;
  uint64_t ua = static_cast<uint64_t>(r < 0 ? r + n : r);
  while (ua != 0) {
    v = 0;
    while ((ua & 1) == 0) {
      ua >>= 1;
      ++v;
    }
    if (v & 1) k *= tab2[un & 7];
    if (ua & un & 2) k = -k;
    const uint64_t t = un % ua;
    un = ua;
    ua = t;
  }
  return un == 1 ? k : 0;
}

SquareSplit square_split(int64_t n) {
  if (n == 0) throw std::invalid_argument("square_split of 0");
  const Factorization f = factorize(n);
  int64_t c = 1, b = f.sign;
  for (const auto& [p, e] : f.factors) {
    for (int i = 0; i < e / 2; ++i) c *= static_cast<int64_t>(p);
    if (e % 2 == 1) b *= static_cast<int64_t>(p);
  }
  return {c, b};
}

bool is_squarefree(uint64_t n) {
  if (n == 0) return false;
  for (const auto& pe : factorize_u64(n).factors) {
    if (pe.second > 1) return false;
  }
  return true;
}

bool is_fundamental_discriminant(int64_t d) {
  if (d == 0 || d == 1) return false;
  const int64_t r = ((d % 4) + 4) % 4;
  const uint64_t mag = d < 0 ? 0 - static_cast<uint64_t>(d) : static_cast<uint64_t>(d);
  if (r == 1) return is_squarefree(mag);
  if (r != 0) return false;
  const int64_t q = d / 4;
  const int64_t qr = ((q % 4) + 4) % 4;
  return (qr == 2 || qr == 3) && is_squarefree(mag / 4);
}

DirichletDiscriminant::DirichletDiscriminant(int64_t d) : d_(d), d0_(1), f_(1) {
  if (d == 0) throw std::invalid_argument("discriminant must be nonzero");
  if (d == 1) return;
  const int64_t r = ((d % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("not a discriminant: " + std::to_string(d));
  const SquareSplit sp = square_split(d);
  const int64_t br = ((sp.b % 4) + 4) % 4;
  if (br == 1) {
    d0_ = sp.b;
    f_ = sp.c;
  } else {
    if (sp.c % 2 != 0) throw std::invalid_argument("not a discriminant: " + std::to_string(d));
    d0_ = 4 * sp.b;
    f_ = sp.c / 2;
  }
}

Rational bernoulli(int m, int bound) {
  if (m < 0) throw std::invalid_argument("negative Bernoulli index");
  if (m > bound) throw std::out_of_range("Bernoulli index " + std::to_string(m) + " exceeds bound");
  static std::mutex mu;
  static std::vector<Rational> memo{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(memo.size()) <= m) {
    // sum_{j=0}^{n} C(n+1, j) B_j = 0
    const int n = static_cast<int>(memo.size());
    Rational acc = 0;
    Integer binom = 1;  // C(n+1, 0)
    for (int j = 0; j < n; ++j) {
      acc += Rational(binom) * memo[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    Rational b = -acc / Rational(n + 1);
    b.canonicalize();
    memo.push_back(b);
  }
  return memo[m];
}

Rational bernoulli_polynomial(int m, const Rational& x) {
  Rational acc = 0;
  Integer binom = 1;
  for (int k = 0; k <= m; ++k) {
    acc += Rational(binom) * bernoulli(k, std::max(m, kDefaultBernoulliBound)) * rpow(x, m - k);
    binom = binom * (m - k) / (k + 1);
  }
  return acc;
}

Rational generalized_bernoulli(int m, const DirichletDiscriminant& d) {
  if (m < 0) throw std::invalid_argument("negative index");
  if (d.is_trivial()) return bernoulli(m, std::max(m, kDefaultBernoulliBound));
  const int64_t f = static_cast<int64_t>(d.modulus());
  Rational acc = 0;
  for (int64_t a = 1; a <= f; ++a) {
    const int c = d.chi(a);
    if (c == 0) continue;
    const Rational term = bernoulli_polynomial(m, make_rational(a, f));
    if (c > 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  acc *= rpow(Rational(to_integer(f)), m - 1);
  acc.canonicalize();
  return acc;
}

SymbolicReal zeta_exact(int m) {
  if (m < 2 || m % 2 != 0) throw std::domain_error("zeta_exact needs an even argument >= 2");
  Rational b = abs(bernoulli(m, std::max(m, kDefaultBernoulliBound)));
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
  Rational q = Rational(ipow(2, static_cast<unsigned long>(m))) * b / Rational(2 * fact);
  return SymbolicReal(q, m, 1);
}

bool l_value_has_closed_form(int s, const DirichletDiscriminant& d) {
  if (s < 1) return false;
  const int delta = d.fundamental() < 0 ? 1 : 0;
  if (d.fundamental() == 1) return s >= 2 && s % 2 == 0;
  return (s - delta) % 2 == 0;
}

SymbolicReal l_value_exact(int s, const DirichletDiscriminant& d) {
  if (!l_value_has_closed_form(s, d)) {
    throw std::domain_error("no closed form for L(" + std::to_string(s) + ", " + std::to_string(d.value()) +
                            "): parity mismatch");
  }
  const int64_t d0 = d.fundamental();
  SymbolicReal base;
  if (d0 == 1) {
    base = zeta_exact(s);
  } else {
    const int64_t f = d0 < 0 ? -d0 : d0;
    const int delta = d0 < 0 ? 1 : 0;
    const Rational b = generalized_bernoulli(s, DirichletDiscriminant(d0));
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(s));
    // (-1)^{1+(s-delta)/2} sqrt(f)/2 (2 pi / f)^s B_{s,chi} / s!
    Rational q = b * Rational(ipow(2, static_cast<unsigned long>(s))) /
                 (Rational(2 * fact) * Rational(ipow(to_integer(f), static_cast<unsigned long>(s))));
    if (((1 + (s - delta) / 2) & 1) != 0) q = -q;
    base = SymbolicReal(q, s, to_integer(f));
  }
  // Imprimitive labels: remove the Euler factors at primes dividing the cofactor.
  if (d.cofactor() != 1) {
    const DirichletDiscriminant prim(d0);
    for (const auto& pe : factorize(d.cofactor()).factors) {
      const int64_t p = static_cast<int64_t>(pe.first);
      const Rational corr = 1 - Rational(prim.chi(p)) * rpow(make_rational(1, p), s);
      base *= SymbolicReal(corr);
    }
  }
  return base;
}

long double hurwitz_zeta(long double s, long double q, long double tol) {
  if (!(s > 1.0L) || !(q > 0.0L)) throw std::domain_error("hurwitz_zeta needs s > 1 and q > 0");
  const int N = 16 + static_cast<int>(std::ceil(std::max<long double>(0.0L, s)));
  long double sum = 0.0L;
  for (int k = 0; k < N; ++k) sum += std::pow(q + k, -s);
  const long double x = q + N;
  sum += std::pow(x, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(x, -s);
  // Euler-Maclaurin correction terms
  long double rising = s;  // s (s+1) ... (s+2j-2)
  long double fact = 2.0L;  // (2j)!
  long double xp = std::pow(x, -s - 1.0L);
  for (int j = 1; j <= 30; ++j) {
    const long double b2j = bernoulli(2 * j).get_d();
    const long double term = b2j / fact * rising * xp;
    sum += term;
    if (std::fabs(term) < tol * 1e-3L) break;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= static_cast<long double>(2 * j + 1) * (2 * j + 2);
    xp /= x * x;
  }
  return sum;
}

long double l_value_numeric(double s, const DirichletDiscriminant& d, double tol) {
  if (!(s > 1.0) || !(tol > 0.0)) throw std::domain_error("l_value_numeric needs s > 1 and tol > 0");
  if (d.is_trivial()) return hurwitz_zeta(s, 1.0L, tol);
  const uint64_t f = d.modulus();
  long double acc = 0.0L;
  for (uint64_t a = 1; a <= f; ++a) {
    const int c = d.chi(static_cast<int64_t>(a));
    if (c == 0) continue;
    acc += c * hurwitz_zeta(s, static_cast<long double>(a) / f, tol / f);
  }
  return acc * std::pow(static_cast<long double>(f), -static_cast<long double>(s));
}

}  // namespace hlc
