#pragma once
// Integer and character arithmetic: factorization, Kronecker symbols,
// Bernoulli numbers and exact/numeric Dirichlet L-values.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hlc/rational.hpp"
#include "hlc/symbolic.hpp"

namespace hlc {

struct Factorization {
  int sign = 1;
  std::vector<std::pair<uint64_t, int>> factors;  // sorted by prime

  Integer value() const;
};

// Trial division by primes below 1e5, then Miller-Rabin and Pollard-Brent rho.
Factorization factorize(int64_t n);
Factorization factorize_u64(uint64_t n);

// Deterministic for all 64-bit inputs.
bool is_prime(uint64_t n);

std::vector<uint32_t> primes_up_to(uint32_t limit);

// Exponent of p in n; n != 0.
int valuation(int64_t n, uint64_t p);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

int kronecker(int64_t a, int64_t n);

// n = c^2 * b with b squarefree; the sign of n is carried by b.
struct SquareSplit {
  int64_t c;
  int64_t b;
};
SquareSplit square_split(int64_t n);

bool is_squarefree(uint64_t n);
bool is_fundamental_discriminant(int64_t d);

// A discriminant D = f^2 * D0 (D0 fundamental or 1) labelling the character m -> (D|m).
// D = 1 is the trivial character; D = 4 is the principal character mod 2.
class DirichletDiscriminant {
 public:
  explicit DirichletDiscriminant(int64_t d);

  int64_t value() const { return d_; }
  int64_t fundamental() const { return d0_; }
  int64_t cofactor() const { return f_; }
  uint64_t modulus() const { return static_cast<uint64_t>(d_ < 0 ? -d_ : d_); }
  bool is_trivial() const { return d_ == 1; }
  bool is_even() const { return d_ > 0; }
  int chi(int64_t m) const { return kronecker(d_, m); }

 private:
  int64_t d_;
  int64_t d0_;
  int64_t f_;
};

inline constexpr int kDefaultBernoulliBound = 64;

// Exact B_m with B_1 = -1/2. Throws std::out_of_range above `bound`.
Rational bernoulli(int m, int bound = kDefaultBernoulliBound);

Rational bernoulli_polynomial(int m, const Rational& x);

// B_{m,chi_D} = |D|^{m-1} sum_{a=1}^{|D|} chi_D(a) B_m(a/|D|); equals B_m for D = 1.
Rational generalized_bernoulli(int m, const DirichletDiscriminant& d);

// zeta(m) = (2 pi)^m |B_m| / (2 m!) for even m >= 2.
SymbolicReal zeta_exact(int m);

// L(s, D) in closed form when chi_D(-1) = (-1)^s; throws std::domain_error otherwise.
SymbolicReal l_value_exact(int s, const DirichletDiscriminant& d);

bool l_value_has_closed_form(int s, const DirichletDiscriminant& d);

// Hurwitz zeta by Euler-Maclaurin summation; s > 1, q > 0.
long double hurwitz_zeta(long double s, long double q, long double tol);

// L(s, D) = |D|^{-s} sum_a chi(a) zeta(s, a/|D|), accurate to `tol`; s > 1.
long double l_value_numeric(double s, const DirichletDiscriminant& d, double tol);

}  // namespace hlc
