#include "hlc/symbolic.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "hlc/number_theory.hpp"

namespace hlc {

namespace {

// Splits n > 0 as c^2 * b, b squarefree.
void square_extract(const Integer& n, Integer& c, Integer& b) {
  c = 1;
  b = 1;
  Integer rest = n;
  if (mpz_fits_ulong_p(rest.get_mpz_t()) == 0) {
    // Large radicands only arise from products of small ones; peel small primes first.
    for (uint32_t p : primes_up_to(1u << 16)) {
      Integer pz = p;
      int e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
        rest /= pz;
        ++e;
      }
      if (e / 2 > 0) c *= ipow(pz, static_cast<unsigned long>(e / 2));
      if (e % 2 == 1) b *= pz;
    }
    if (mpz_fits_ulong_p(rest.get_mpz_t()) == 0) {
      if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
        Integer r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        c *= r;
        return;
      }
      throw std::domain_error("radicand too large to reduce: " + n.get_str());
    }
  }
  for (const auto& [p, e] : factorize_u64(mpz_get_ui(rest.get_mpz_t())).factors) {
    Integer pz = to_integer_u64(p);
    if (e / 2 > 0) c *= ipow(pz, static_cast<unsigned long>(e / 2));
    if (e % 2 == 1) b *= pz;
  }
}

}  // namespace

SymbolicReal::SymbolicReal(Rational q, int e, Integer s) : q_(std::move(q)), e_(e), s_(std::move(s)) {
  if (s_ <= 0) throw std::domain_error("radicand must be positive");
  q_.canonicalize();
  if (s_ != 1) {
    Integer c, b;
    square_extract(s_, c, b);
    q_ *= Rational(c);
    s_ = b;
  }
  canonicalize();
}

void SymbolicReal::canonicalize() {
  if (q_ == 0) {
    e_ = 0;
    s_ = 1;
  }
}

SymbolicReal SymbolicReal::operator*(const SymbolicReal& o) const {
  SymbolicReal r;
  Integer g;
  mpz_gcd(g.get_mpz_t(), s_.get_mpz_t(), o.s_.get_mpz_t());
  r.q_ = q_ * o.q_ * Rational(g);
  r.e_ = e_ + o.e_;
  r.s_ = (s_ / g) * (o.s_ / g);
  r.canonicalize();
  return r;
}

SymbolicReal SymbolicReal::operator/(const SymbolicReal& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero");
  SymbolicReal inv;
  inv.q_ = 1 / (o.q_ * Rational(o.s_));
  inv.e_ = -o.e_;
  inv.s_ = o.s_;
  return *this * inv;
}

SymbolicReal SymbolicReal::operator+(const SymbolicReal& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (e_ != o.e_ || s_ != o.s_) {
    throw std::domain_error("cannot add " + pretty() + " and " + o.pretty() + " exactly");
  }
  SymbolicReal r;
  r.q_ = q_ + o.q_;
  r.e_ = e_;
  r.s_ = s_;
  r.canonicalize();
  return r;
}

SymbolicReal SymbolicReal::operator-(const SymbolicReal& o) const {
  return *this + (-o);
}

HighFloat SymbolicReal::numeric_hp() const {
  HighFloat v = to_high(q_);
  if (e_ != 0) v *= boost::multiprecision::pow(high_pi(), e_);
  if (s_ != 1) v *= boost::multiprecision::sqrt(to_high(s_));
  return v;
}

double SymbolicReal::numeric() const {
  return numeric_hp().convert_to<double>();
}

std::string SymbolicReal::serialize() const {
  std::string out = q_.get_num().get_str() + "/" + q_.get_den().get_str();
  out += "*pi^" + std::to_string(e_);
  out += "*sqrt(" + s_.get_str() + ")";
  return out;
}

SymbolicReal SymbolicReal::parse(std::string_view text) {
  auto fail = [&]() -> SymbolicReal {
    throw std::invalid_argument("malformed symbolic value: " + std::string(text));
  };
  const auto pi_pos = text.find("*pi^");
  const auto sq_pos = text.find("*sqrt(");
  if (pi_pos == std::string_view::npos || sq_pos == std::string_view::npos || sq_pos < pi_pos ||
      text.back() != ')') {
    return fail();
  }
  const std::string qtext(text.substr(0, pi_pos));
  const std::string_view etext = text.substr(pi_pos + 4, sq_pos - pi_pos - 4);
  const std::string stext(text.substr(sq_pos + 6, text.size() - sq_pos - 7));
  Rational q;
  Integer s;
  if (q.set_str(qtext, 10) != 0 || q.get_den() == 0 || s.set_str(stext, 10) != 0 || s <= 0) return fail();
  int e = 0;
  auto [ptr, ec] = std::from_chars(etext.data(), etext.data() + etext.size(), e);
  if (ec != std::errc() || ptr != etext.data() + etext.size()) return fail();
  return SymbolicReal(q, e, s);
}

std::string SymbolicReal::pretty() const {
  if (is_zero()) return "0";
  std::string out = q_.get_str();
  if (e_ != 0) out += " * pi^" + std::to_string(e_);
  if (s_ != 1) out += " * sqrt(" + s_.get_str() + ")";
  return out;
}

SymbolicReal sqrt_of(const Rational& x) {
  if (x < 0) throw std::domain_error("square root of a negative number");
  if (x == 0) return SymbolicReal();
  // sqrt(n/d) = sqrt(n*d)/d
  return SymbolicReal(Rational(Integer(1), x.get_den()), 0, x.get_num() * x.get_den());
}

}  // namespace hlc
