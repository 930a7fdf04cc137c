#pragma once
// p-adic local densities: closed forms at good primes, residue counting otherwise.

#include <cstdint>
#include <vector>

#include "hlc/forms.hpp"
#include "hlc/rational.hpp"

namespace hlc {

// Diagonal: a x^2.  Block: a (x^2 + x y + c y^2), two real variables.
struct DensityComponent {
  enum class Kind { Diagonal, Block };
  Kind kind = Kind::Diagonal;
  int64_t a = 1;
  int64_t c = 0;

  static DensityComponent diagonal(int64_t a) { return {Kind::Diagonal, a, 0}; }
  static DensityComponent block(int64_t a, int64_t c) { return {Kind::Block, a, c}; }
  int real_rank() const { return kind == Kind::Diagonal ? 1 : 2; }
  bool operator==(const DensityComponent&) const = default;
};

struct DensityForm {
  std::vector<DensityComponent> components;

  int real_rank() const;
};

enum class DensityMethod { ClosedFormGood, ResidueCount };

struct LocalDensityResult {
  uint64_t p = 0;
  Rational value;
  DensityMethod method = DensityMethod::ResidueCount;
  int stabilized_at = 0;  // residue counting only
  bool stable = true;
};

DensityForm diagonal_density_form(const std::vector<int64_t>& diag);

// Real form Q as a density form; complex forms go through complexify().
DensityForm real_density_form(const FormSpec& q);

// Q_H: d = 0 mod 4 gives diag(a_i, -a_i d/4); d = 1 mod 4 gives blocks a_i(x^2 + xy + (1-d)/4 y^2).
DensityForm complexify(const FormSpec& h);

// Same real variables, but every block replaced by its p-adic diagonalization diag(a, -a d/4).
DensityForm complexify_diagonal(const FormSpec& h);

// Closed form for p not dividing 2 det; diag includes the negative entry.
Rational delta_p_good_real(const std::vector<int64_t>& diag, int64_t k, uint64_t p);

// Closed form for p not dividing 2 d det(H).
Rational delta_p_good_complex(const FormSpec& h, int64_t k, uint64_t p);

// Normalized count #{x mod p^j : Q[x] = k} / p^{j(R-1)} at a single level j.
Rational residue_count_level(const DensityForm& form, int64_t k, uint64_t p, int j);

// Smallest level at which consecutive agreement is trusted.
int residue_count_j_min(const DensityForm& form, int64_t k, uint64_t p);

inline constexpr uint64_t kResidueModulusCap = 1u << 16;
inline constexpr uint64_t kResidueBlockModulusCap = 1u << 11;

// Increasing j from j_min until two consecutive levels agree; j_max = 0 picks the default.
LocalDensityResult delta_p_residue_count(const DensityForm& form, int64_t k, uint64_t p, int j_max = 0);

// Dispatch: closed form at good primes, residue counting at the rest.
LocalDensityResult delta_p(const FormSpec& form, int64_t k, uint64_t p);

}  // namespace hlc
