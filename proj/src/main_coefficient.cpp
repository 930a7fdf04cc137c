#include "hlc/main_coefficient.hpp"

#include <stdexcept>

namespace hlc {

namespace {

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer double_factorial(unsigned long n) {
  Integer f;
  mpz_2fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

Rational rho_of(const FormSpec& form) {
  const int n = form.n();
  return form.field.is_complex() ? Rational(n) : make_rational(n - 1, 2);
}

SymbolicReal c_prime(const FormSpec& form) {
  form.validate();
  const int n = form.n();
  const Integer a = to_integer(form.a);
  const Integer prod = form.positive_product();
  if (!form.field.is_complex()) {
    // pi^{n/2} / Gamma(n/2)
    SymbolicReal ratio;
    if (n % 2 == 0) {
      ratio = SymbolicReal(Rational(Integer(1), factorial(static_cast<unsigned long>(n / 2 - 1))), n / 2);
    } else {
      const Integer num = ipow(2, static_cast<unsigned long>((n - 1) / 2));
      ratio = SymbolicReal(Rational(num, double_factorial(static_cast<unsigned long>(n - 2))), (n - 1) / 2);
    }
    const SymbolicReal lead(make_rational(2, n - 1));
    const SymbolicReal root = sqrt_of(Rational(ipow(a, static_cast<unsigned long>(n - 2)), prod));
    return lead * ratio * root;
  }
  const int64_t d = form.field.disc < 0 ? -form.field.disc : form.field.disc;
  const Rational q = Rational(ipow(2, static_cast<unsigned long>(n + 1)) * ipow(a, static_cast<unsigned long>(n - 1)),
                              factorial(static_cast<unsigned long>(n)) * prod);
  const SymbolicReal dpart = sqrt_of(Rational(ipow(to_integer(d), static_cast<unsigned long>(n + 1))));
  return SymbolicReal(q, n + 1) / dpart;
}

MainCoefficient main_coefficient(const FormSpec& form, int64_t k, DiscriminantRule rule) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  MainCoefficient mc;
  mc.c_prime = c_prime(form);
  mc.delta = delta_global(form, -k, rule);
  mc.rho = rho_of(form);
  mc.two_rho = 2 * mc.rho;
  if (mc.delta.symbolic) {
    mc.c = mc.c_prime * mc.delta.value;
    mc.exact = true;
    mc.hp = mc.c.numeric_hp();
  } else {
    mc.exact = false;
    mc.hp = mc.c_prime.numeric_hp() * mc.delta.numeric;
  }
  mc.numeric = mc.hp.convert_to<double>();
  return mc;
}

}  // namespace hlc
