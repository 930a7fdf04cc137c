#pragma once
// Diagonal signature-(n,1) forms over Z or an imaginary quadratic maximal order.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlc/rational.hpp"

namespace hlc {

enum class FieldKind { Real, Complex };

struct FieldSpec {
  FieldKind kind = FieldKind::Real;
  int64_t disc = 0;  // negative fundamental discriminant when Complex, 0 otherwise

  static FieldSpec real() { return {}; }
  static FieldSpec complex(int64_t disc);  // validates

  int r() const { return kind == FieldKind::Real ? 1 : 2; }
  bool is_complex() const { return kind == FieldKind::Complex; }
  bool operator==(const FieldSpec&) const = default;
};

enum class OmegaKind { SqrtHalfDisc, OnePlusSqrtOverTwo };

// Norm form N(x + y w) = A x^2 + B x y + C y^2 of the maximal order.
struct OrderBasis {
  int64_t disc;
  OmegaKind omega_kind;
  int64_t A, B, C;

  explicit OrderBasis(int64_t disc);
  int64_t norm(int64_t x, int64_t y) const { return A * x * x + B * x * y + C * y * y; }
  int units() const { return disc == -3 ? 6 : disc == -4 ? 4 : 2; }
};

struct FormSpec {
  FieldSpec field;
  std::vector<int64_t> positive_part;
  int64_t a = 1;

  int n() const { return static_cast<int>(positive_part.size()); }
  int m() const { return n() + 1; }
  Integer positive_product() const;
  Integer det() const { return -Integer(a) * positive_product(); }  // det of diag(a_1..a_n, -a)
  // All diagonal entries including -a.
  std::vector<int64_t> diagonal() const;

  void validate() const;
  bool operator==(const FormSpec&) const = default;
};

// Grammar "a1,...,an;a" with optional "@R" or "@C:disc".
FormSpec parse_form(std::string_view text);
std::string serialize_form(const FormSpec& form);

// diag(I_n, -a) over the given field.
FormSpec identity_form(int n, int64_t a, const FieldSpec& field);

}  // namespace hlc
