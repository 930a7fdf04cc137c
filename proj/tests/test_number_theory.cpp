#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <mpfr.h>

#include "hlc/number_theory.hpp"

using namespace hlc;

namespace {

std::vector<std::pair<uint64_t, int>> trial_division(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  for (uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Akiyama-Tanigawa gives B_m with B_1 = +1/2.
Rational bernoulli_oracle(int m) {
  std::vector<Rational> a(m + 1);
  for (int i = 0; i <= m; ++i) {
    a[i] = make_rational(1, i + 1);
    for (int j = i; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return m == 1 ? make_rational(-1, 2) : a[0];
}

Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational bernoulli_poly_oracle(int m, const Rational& x) {
  Rational s = 0;
  for (int k = 0; k <= m; ++k) s += binomial(m, k) * bernoulli_oracle(k) * rpow(x, m - k);
  return s;
}

double mpfr_zeta_ui(unsigned long m) {
  mpfr_t z;
  mpfr_init2(z, 200);
  mpfr_zeta_ui(z, m, MPFR_RNDN);
  const double out = mpfr_get_d(z, MPFR_RNDN);
  mpfr_clear(z);
  return out;
}

// Direct character sum up to N; the tail is below |D| N^{-s} for s >= 2.
double l_series(int s, int64_t D, uint64_t N) {
  long double acc = 0;
  for (uint64_t m = N; m >= 1; --m) {
    const int c = kronecker(D, static_cast<int64_t>(m));
    if (c) acc += c * std::pow(static_cast<long double>(m), -static_cast<long double>(s));
  }
  return static_cast<double>(acc);
}

}  // namespace

TEST_SUITE("number_theory") {
  TEST_CASE("factorize small values") {
    const Factorization f = factorize(60);
    CHECK(f.sign == 1);
    CHECK(f.factors == std::vector<std::pair<uint64_t, int>>{{2, 2}, {3, 1}, {5, 1}});
    const Factorization m = factorize(-1);
    CHECK(m.sign == -1);
    CHECK(m.factors.empty());
    CHECK(factorize(14999999).factors == trial_division(14999999));
    CHECK(factorize(-720).value() == -720);
    CHECK_THROWS(factorize(0));
  }

  TEST_CASE("factorize matches trial division") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
      const uint64_t n = rng() % 2'000'000'000ULL + 1;
      CHECK(factorize_u64(n).factors == trial_division(n));
    }
  }

  TEST_CASE("factorize reconstructs random 64-bit integers with prime factors") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
      uint64_t n = rng();
      if (i % 3 == 0) n >>= (i % 40);
      if (n == 0) n = 1;
      const Factorization f = factorize_u64(n);
      Integer prod = 1;
      for (const auto& [p, e] : f.factors) {
        const Integer zp = to_integer_u64(p);
        REQUIRE(mpz_probab_prime_p(zp.get_mpz_t(), 30) > 0);
        prod *= ipow(zp, e);
      }
      CHECK(prod == to_integer_u64(n));
      for (size_t j = 1; j < f.factors.size(); ++j) CHECK(f.factors[j - 1].first < f.factors[j].first);
    }
  }

  TEST_CASE("factorize semiprimes with large factors") {
    const uint64_t p = 4294967291ULL, q = 4294967279ULL;
    CHECK(factorize_u64(p * q).factors == std::vector<std::pair<uint64_t, int>>{{q, 1}, {p, 1}});
    const uint64_t r = 1000000007ULL;
    CHECK(factorize_u64(r * r).factors == std::vector<std::pair<uint64_t, int>>{{r, 2}});
  }

  TEST_CASE("is_prime agrees with GMP") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 5000; ++i) {
      const uint64_t n = rng() >> (i % 60);
      const Integer z = to_integer_u64(n);
      CHECK(is_prime(n) == (mpz_probab_prime_p(z.get_mpz_t(), 40) > 0));
    }
  }

  TEST_CASE("kronecker values") {
    CHECK(kronecker(4, 3) == 1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(6, 4) == 0);
    CHECK(kronecker(-3, 3) == 0);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-1, -1) == -1);
  }

  TEST_CASE("kronecker matches GMP and is multiplicative and periodic") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int64_t> u(-100000, 100000);
    for (int i = 0; i < 5000; ++i) {
      const int64_t a = u(rng), b = u(rng), c = u(rng);
      const Integer za = to_integer(a), zb = to_integer(b);
      CHECK(kronecker(a, b) == mpz_kronecker(za.get_mpz_t(), zb.get_mpz_t()));
      CHECK(kronecker(a, b * c) == kronecker(a, b) * kronecker(a, c));
      CHECK(kronecker(a * c, b) == kronecker(a, b) * kronecker(c, b));
    }
    for (int64_t D : {-3, -4, -7, -8, 5, 8, 12, 13, -15, 21, -20, 24}) {
      for (int64_t m = -50; m <= 50; ++m) {
        CHECK(kronecker(D, m) == kronecker(D, m + std::abs(D)));
        for (int64_t n = 1; n <= 20; ++n) CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
      }
    }
  }

  TEST_CASE("square split and discriminants") {
    CHECK((square_split(12).c == 2 && square_split(12).b == 3));
    CHECK((square_split(-50).c == 5 && square_split(-50).b == -2));
    CHECK((square_split(1).c == 1 && square_split(1).b == 1));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(5));
    CHECK(is_fundamental_discriminant(8));
    CHECK_FALSE(is_fundamental_discriminant(-12));
    CHECK_FALSE(is_fundamental_discriminant(-5));
    const DirichletDiscriminant four(4);
    CHECK(four.fundamental() == 1);
    CHECK(four.cofactor() == 2);
  }

  TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == make_rational(-1, 2));
    CHECK(bernoulli(2) == make_rational(1, 6));
    CHECK(bernoulli(4) == make_rational(-1, 30));
    CHECK(bernoulli(12) == make_rational(-691, 2730));
    for (int m = 0; m <= 60; ++m) CHECK(bernoulli(m) == bernoulli_oracle(m));
    CHECK_THROWS(bernoulli(65));
    CHECK_NOTHROW(bernoulli(80, 100));
  }

  TEST_CASE("zeta at even integers") {
    CHECK(zeta_exact(2) == SymbolicReal(make_rational(1, 6), 2));
    CHECK(zeta_exact(4) == SymbolicReal(make_rational(1, 90), 4));
    CHECK(zeta_exact(6) == SymbolicReal(make_rational(1, 945), 6));
    for (int m : {2, 4, 6, 8, 10, 12, 20}) CHECK(std::abs(zeta_exact(m).numeric() - mpfr_zeta_ui(m)) < 1e-14);
    CHECK_THROWS(zeta_exact(3));
    CHECK_THROWS(zeta_exact(0));
  }

  TEST_CASE("generalized bernoulli numbers") {
    CHECK(generalized_bernoulli(2, DirichletDiscriminant(5)) == make_rational(4, 5));
    CHECK(generalized_bernoulli(1, DirichletDiscriminant(-4)) == make_rational(-1, 2));
    for (int m = 1; m <= 20; ++m) CHECK(generalized_bernoulli(m, DirichletDiscriminant(1)) == bernoulli(m));
    for (int64_t D : {-3, -4, -7, -8, 5, 8, 12, 13, -15, 21}) {
      const DirichletDiscriminant dd(D);
      const int64_t f = std::abs(D);
      for (int m = 1; m <= 8; ++m) {
        Rational s = 0;
        for (int64_t a = 1; a <= f; ++a) s += kronecker(D, a) * bernoulli_poly_oracle(m, make_rational(a, f));
        CHECK(generalized_bernoulli(m, dd) == s * rpow(Rational(f), m - 1));
      }
    }
  }

  TEST_CASE("exact L-values") {
    CHECK(l_value_exact(2, DirichletDiscriminant(4)) == SymbolicReal(make_rational(1, 8), 2));
    CHECK(l_value_exact(2, DirichletDiscriminant(5)) == SymbolicReal(make_rational(4, 125), 2, 5));
    CHECK(l_value_exact(2, DirichletDiscriminant(1)) == SymbolicReal(make_rational(1, 6), 2));
    CHECK(l_value_exact(1, DirichletDiscriminant(-4)) == SymbolicReal(make_rational(1, 4), 1));
    CHECK(std::abs(l_value_exact(2, DirichletDiscriminant(5)).numeric() - l_series(2, 5, 2'000'000)) < 1e-10);
    CHECK_THROWS(l_value_exact(2, DirichletDiscriminant(-3)));
    CHECK_FALSE(l_value_has_closed_form(3, DirichletDiscriminant(5)));
  }

  TEST_CASE("exact and numeric L-values agree") {
    int checked = 0;
    for (int64_t D = -40; D <= 40; ++D) {
      if (D != 1 && !is_fundamental_discriminant(D)) continue;
      const DirichletDiscriminant dd(D);
      for (int s = 1; s <= 8; ++s) {
        if (!l_value_has_closed_form(s, dd)) continue;
        if (s == 1) continue;
        const double ex = l_value_exact(s, dd).numeric();
        const double nu = static_cast<double>(l_value_numeric(s, dd, 1e-13));
        CHECK(std::abs(ex - nu) < 1e-12);
        ++checked;
      }
    }
    CHECK(checked > 50);
  }

  TEST_CASE("numeric L-values against direct series") {
    CHECK(std::abs(l_value_numeric(2, DirichletDiscriminant(4), 1e-10) - 1.2337005501361698) < 1e-10);
    CHECK(std::abs(l_value_numeric(6, DirichletDiscriminant(-3), 1e-12) - l_series(6, -3, 20000)) < 1e-12);
    CHECK(std::abs(l_value_numeric(3, DirichletDiscriminant(-3), 1e-12) -
                   l_value_exact(3, DirichletDiscriminant(-3)).numeric()) < 1e-12);
    CHECK(std::abs(l_value_numeric(3, DirichletDiscriminant(5), 1e-12) - l_series(3, 5, 200000)) < 1e-12);
    CHECK(std::abs(l_value_numeric(4, DirichletDiscriminant(1), 1e-12) - mpfr_zeta_ui(4)) < 1e-12);
    CHECK_THROWS(l_value_numeric(1.0, DirichletDiscriminant(5), 1e-10));
  }
}
