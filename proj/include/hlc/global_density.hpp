#pragma once
// Global density delta(Q, k) = prod_p delta_p(Q, k) in closed form.

#include <cstdint>
#include <string>
#include <vector>

#include "hlc/forms.hpp"
#include "hlc/local_density.hpp"
#include "hlc/number_theory.hpp"
#include "hlc/symbolic.hpp"

namespace hlc {

// WorkedExample relabels D = 1 as D = 4 (principal character mod 2); Literal keeps D = 1.
// The Euler-factor bookkeeping makes both produce the same delta.
enum class DiscriminantRule { WorkedExample, Literal };

struct GlobalDensity {
  SymbolicReal value;     // valid when symbolic
  bool symbolic = true;   // false when an L-value had no closed form
  HighFloat numeric = 0;  // always set
  std::vector<LocalDensityResult> bad_primes;
  std::string series_part;  // e.g. "L(2,4)/zeta(4)"
  bool all_stable = true;

  bool is_zero() const { return numeric == 0; }
};

// Character label D of the series factor for a real form.
DirichletDiscriminant discriminant_label_real(const FormSpec& q, int64_t k,
                                              DiscriminantRule rule = DiscriminantRule::WorkedExample);

GlobalDensity delta_global_real(const FormSpec& q, int64_t k,
                                DiscriminantRule rule = DiscriminantRule::WorkedExample);
GlobalDensity delta_global_complex(const FormSpec& h, int64_t k);
GlobalDensity delta_global(const FormSpec& form, int64_t k,
                           DiscriminantRule rule = DiscriminantRule::WorkedExample);

struct TruncatedProduct {
  double value = 0;
  double tail_bound = 0;
  bool rigorous = true;  // false for real n = 2, where the tail series converges only conditionally
};

// prod_{p <= P} delta_p (plus any primes dividing k), with a bound on |delta - value|.
TruncatedProduct delta_truncated_product(const FormSpec& form, int64_t k, uint64_t P);

}  // namespace hlc
