#pragma once
// Leading coefficient C(Q,-k) = C'(Q) delta(Q,-k) of the lattice point count.

#include <cstdint>

#include "hlc/global_density.hpp"

namespace hlc {

struct MainCoefficient {
  SymbolicReal c_prime;
  GlobalDensity delta;
  SymbolicReal c;        // valid when exact
  bool exact = true;
  HighFloat hp = 0;      // C to ~50 digits
  double numeric = 0;
  Rational rho;
  Rational two_rho;

  bool is_zero() const { return hp == 0; }
};

Rational rho_of(const FormSpec& form);

SymbolicReal c_prime(const FormSpec& form);

// k > 0; the density is taken at -k.
MainCoefficient main_coefficient(const FormSpec& form, int64_t k,
                                 DiscriminantRule rule = DiscriminantRule::WorkedExample);

}  // namespace hlc
