#pragma once
// Exact constants of the shape q * pi^e * sqrt(s), s squarefree.

#include <string>
#include <string_view>

#include "hlc/numeric.hpp"
#include "hlc/rational.hpp"

namespace hlc {

class SymbolicReal {
 public:
  SymbolicReal() : q_(0), e_(0), s_(1) {}
  SymbolicReal(Rational q, int e = 0, Integer s = 1);  // s > 0, reduced to squarefree

  static SymbolicReal pi_power(int e) { return SymbolicReal(Rational(1), e, 1); }

  const Rational& q() const { return q_; }
  int e() const { return e_; }
  const Integer& s() const { return s_; }
  bool is_zero() const { return q_ == 0; }
  bool is_rational() const { return e_ == 0 && s_ == 1; }

  SymbolicReal operator*(const SymbolicReal& o) const;
  SymbolicReal operator/(const SymbolicReal& o) const;  // throws std::domain_error on zero
  // Defined only when both sides share (e, s) or one side is zero.
  SymbolicReal operator+(const SymbolicReal& o) const;
  SymbolicReal operator-(const SymbolicReal& o) const;
  SymbolicReal operator-() const { return SymbolicReal(-q_, e_, s_); }
  SymbolicReal& operator*=(const SymbolicReal& o) { return *this = *this * o; }
  SymbolicReal& operator/=(const SymbolicReal& o) { return *this = *this / o; }

  bool operator==(const SymbolicReal& o) const { return q_ == o.q_ && e_ == o.e_ && s_ == o.s_; }

  double numeric() const;
  HighFloat numeric_hp() const;

  // "num/den*pi^e*sqrt(s)"; parse() accepts exactly that shape.
  std::string serialize() const;
  static SymbolicReal parse(std::string_view text);

  // Human form: "15/2 * pi^-2", "945/26 * sqrt(3)", "5".
  std::string pretty() const;

 private:
  void canonicalize();

  Rational q_;
  int e_;
  Integer s_;
};

// sqrt(x) for a nonnegative rational x.
SymbolicReal sqrt_of(const Rational& x);

}  // namespace hlc
