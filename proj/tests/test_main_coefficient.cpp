#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "hlc/main_coefficient.hpp"
#include "table_values.hpp"

using namespace hlc;

namespace {

SymbolicReal entry_value(const test::TableEntry& e) {
  Rational q(e.q);
  q.canonicalize();
  return SymbolicReal(q, 0, e.s);
}

// General constant with vol(S^{nr-1}) = 2 pi^{nr/2} / Gamma(nr/2), evaluated in floating point.
double c_prime_float(const FormSpec& f) {
  const int n = f.n(), r = f.field.r();
  const double d = f.field.is_complex() ? std::abs(static_cast<double>(f.field.disc)) : 1.0;
  const double rho = f.field.is_complex() ? n : (n - 1) / 2.0;
  double prod = 1;
  for (int64_t v : f.positive_part) prod *= static_cast<double>(v);
  const double detq = prod * static_cast<double>(f.a);
  const double vol = 2 * std::pow(M_PI, n * r / 2.0) / boost::math::tgamma(n * r / 2.0);
  return std::pow(2.0, (r - 1) * (n + 1)) * std::pow(static_cast<double>(f.a), rho) /
         (std::pow(d, (n + 1) / 2.0) * std::pow(detq, r / 2.0)) * vol / (2 * rho) * std::pow(M_PI, r / 2.0) /
         boost::math::tgamma(r / 2.0);
}

}  // namespace

TEST_SUITE("main_coefficient") {
  TEST_CASE("C' values") {
    CHECK(c_prime(parse_form("1,1,1,1;1")) == SymbolicReal(make_rational(2, 3), 2));
    CHECK(c_prime(parse_form("1,1,1,1,1;1@C:-3")) == SymbolicReal(make_rational(64, 120 * 27), 6));
    CHECK(c_prime(parse_form("1,1;2")) == SymbolicReal(2, 1));
  }

  TEST_CASE("C' agrees with the general volume formula") {
    for (const char* text : {"1,1;1", "1,2;3", "1,1,1;2", "1,1,1,1;5", "2,3,1,1,1;7", "1,1,1,1,1,1;3",
                             "1,1,1,1,1,1,1,1;6", "1,1;1@C:-3", "1,2;5@C:-4", "1,1,1;2@C:-7", "1,1,1,1,1;3@C:-8"}) {
      const FormSpec f = parse_form(text);
      const double ref = c_prime_float(f);
      INFO(text);
      CHECK(std::abs(c_prime(f).numeric() - ref) <= 1e-12 * ref);
    }
  }

  TEST_CASE("rho") {
    CHECK(rho_of(parse_form("1,1,1,1;1")) == make_rational(3, 2));
    CHECK(rho_of(parse_form("1,1,1,1,1;1@C:-3")) == 5);
  }

  TEST_CASE("worked coefficients") {
    CHECK(main_coefficient(parse_form("1,1,1,1;1"), 1).c == SymbolicReal(5));
    CHECK(main_coefficient(parse_form("1,1,1,1,1;1@C:-3"), 1).c == SymbolicReal(18));
    CHECK(main_coefficient(parse_form("1,1,1,1;5"), 1).c == SymbolicReal(make_rational(140, 13), 0, 5));
    CHECK_THROWS(main_coefficient(parse_form("1,1,1,1;1"), 0));
  }

  TEST_CASE("all table coefficients reproduce exactly") {
    int checked = 0;
    for (const auto& t : test::kTables) {
      for (const auto& e : t.rows) {
        const FormSpec f = identity_form(t.n, e.a, t.complex ? FieldSpec::complex(-3) : FieldSpec::real());
        const MainCoefficient mc = main_coefficient(f, 1);
        INFO("n=" << t.n << " complex=" << t.complex << " a=" << e.a << " got " << mc.c.pretty());
        CHECK(mc.exact);
        CHECK(mc.c == entry_value(e));
        CHECK(mc.c == mc.c_prime * mc.delta.value);
        CHECK(mc.is_zero() == (std::string(e.q) == "0/1"));
        CHECK(mc.two_rho == 2 * mc.rho);
        ++checked;
      }
    }
    CHECK(checked == 120);
  }

  TEST_CASE("Gaussian reading of the n = 5 family") {
    CHECK(main_coefficient(identity_form(5, 1, FieldSpec::complex(-4)), 1).c == SymbolicReal(8));
  }
}
