#include "hlc/global_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace hlc {

namespace {

int64_t det_int64(const FormSpec& f) {
  const Integer det = f.det();
  if (!fits_int64(det)) throw std::overflow_error("det(Q) exceeds 64 bits");
  return to_int64(det);
}

std::vector<uint64_t> primes_dividing(std::initializer_list<int64_t> values) {
  std::set<uint64_t> ps;
  for (int64_t v : values) {
    if (v == 0) continue;
    for (const auto& pe : factorize(v).factors) ps.insert(pe.first);
  }
  return {ps.begin(), ps.end()};
}

int64_t checked_mul64(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("k * det(Q) exceeds 64 bits");
  return r;
}

std::string series_label(const char* name, int s, int64_t d) {
  return std::string(name) + "(" + std::to_string(s) + "," + std::to_string(d) + ")";
}

// L(s, D) exactly when possible, else numerically.
struct LFactor {
  bool exact = true;
  SymbolicReal value;
  HighFloat numeric = 0;
};

LFactor l_factor(int s, const DirichletDiscriminant& d) {
  LFactor f;
  if (l_value_has_closed_form(s, d)) {
    f.value = l_value_exact(s, d);
    f.numeric = f.value.numeric_hp();
  } else {
    f.exact = false;
    f.numeric = HighFloat(l_value_numeric(s, d, 1e-18));
  }
  return f;
}

void finish(GlobalDensity& g, const LFactor& l, bool l_in_numerator, const SymbolicReal& other,
            const Rational& local) {
  for (const auto& b : g.bad_primes) g.all_stable = g.all_stable && b.stable;
  if (local == 0) {
    g.value = SymbolicReal();
    g.symbolic = true;
    g.numeric = 0;
    return;
  }
  if (l.exact) {
    SymbolicReal v = l_in_numerator ? l.value * other : other / l.value;
    g.value = v * SymbolicReal(local);
    g.symbolic = true;
    g.numeric = g.value.numeric_hp();
    return;
  }
  g.symbolic = false;
  const HighFloat rest = other.numeric_hp() * to_high(local);
  g.numeric = l_in_numerator ? l.numeric * rest : rest / l.numeric;
}

}  // namespace

DirichletDiscriminant discriminant_label_real(const FormSpec& q, int64_t k, DiscriminantRule rule) {
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const int m = q.m();
  const int64_t det = det_int64(q);
  const int64_t base = m % 2 == 1 ? checked_mul64(k, det) : det;
  const int half = m % 2 == 1 ? (m - 1) / 2 : m / 2;
  const int64_t b = square_split(base).b;
  const int64_t t = (half % 2 == 0) ? b : -b;
  int64_t D = (((t % 4) + 4) % 4 == 1) ? t : 4 * t;
  if (D == 1 && rule == DiscriminantRule::WorkedExample) D = 4;
  return DirichletDiscriminant(D);
}

GlobalDensity delta_global_real(const FormSpec& q, int64_t k, DiscriminantRule rule) {
  if (q.field.is_complex()) throw std::invalid_argument("real form expected");
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const int m = q.m();
  const DirichletDiscriminant D = discriminant_label_real(q, k, rule);
  GlobalDensity g;
  Rational local = 1;
  const std::vector<uint64_t> S = primes_dividing({2, k, det_int64(q)});
  if (m % 2 == 1) {
    const int s = (m - 1) / 2;
    for (uint64_t p : S) {
      LocalDensityResult r = delta_p(q, k, p);
      const Rational ps = make_rational(1, static_cast<int64_t>(p));
      local *= r.value * (1 - Rational(D.chi(static_cast<int64_t>(p))) * rpow(ps, s)) / (1 - rpow(ps, 2 * s));
      g.bad_primes.push_back(std::move(r));
    }
    g.series_part = series_label("L", s, D.value()) + "/zeta(" + std::to_string(2 * s) + ")";
    const LFactor l = l_factor(s, D);
    finish(g, l, true, SymbolicReal(1) / zeta_exact(2 * s), local);
  } else {
    const int s = m / 2;
    for (uint64_t p : S) {
      LocalDensityResult r = delta_p(q, k, p);
      const Rational ps = make_rational(1, static_cast<int64_t>(p));
      local *= r.value / (1 - Rational(D.chi(static_cast<int64_t>(p))) * rpow(ps, s));
      g.bad_primes.push_back(std::move(r));
    }
    g.series_part = "1/" + series_label("L", s, D.value());
    const LFactor l = l_factor(s, D);
    finish(g, l, false, SymbolicReal(1), local);
  }
  return g;
}

GlobalDensity delta_global_complex(const FormSpec& h, int64_t k) {
  if (!h.field.is_complex()) throw std::invalid_argument("complex form expected");
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const int m = h.m();
  const int64_t d = h.field.disc;
  GlobalDensity g;
  Rational local = 1;
  const std::vector<uint64_t> S = primes_dividing({2, d, k, det_int64(h)});
  const bool odd = m % 2 == 1;
  const DirichletDiscriminant chi(odd ? d : 1);
  for (uint64_t p : S) {
    LocalDensityResult r = delta_p(h, k, p);
    const Rational ps = make_rational(1, static_cast<int64_t>(p));
    local *= r.value / (1 - Rational(chi.chi(static_cast<int64_t>(p))) * rpow(ps, m));
    g.bad_primes.push_back(std::move(r));
  }
  LFactor l;
  if (odd) {
    g.series_part = "1/" + series_label("L", m, d);
    l = l_factor(m, chi);
  } else {
    g.series_part = "1/zeta(" + std::to_string(m) + ")";
    l.value = zeta_exact(m);
    l.numeric = l.value.numeric_hp();
  }
  finish(g, l, false, SymbolicReal(1), local);
  return g;
}

GlobalDensity delta_global(const FormSpec& form, int64_t k, DiscriminantRule rule) {
  return form.field.is_complex() ? delta_global_complex(form, k) : delta_global_real(form, k, rule);
}

TruncatedProduct delta_truncated_product(const FormSpec& form, int64_t k, uint64_t P) {
  if (P < 50) throw std::invalid_argument("prime bound must be >= 50");
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  std::set<uint64_t> primes;
  for (uint32_t p : primes_up_to(static_cast<uint32_t>(P))) primes.insert(p);
  for (uint64_t p : primes_dividing({k, det_int64(form), form.field.disc})) primes.insert(p);

  long double prod = 1.0L;
  for (uint64_t p : primes) {
    const Rational v = delta_p(form, k, p).value;
    if (v == 0) return {0.0, 0.0, true};
    prod *= v.get_d();
  }
  // Tail factors for p > P are 1 + O(p^{-s}).
  const int m = form.m();
  double s;
  if (form.field.is_complex()) {
    s = m;
  } else {
    s = m % 2 == 1 ? (m - 1) / 2.0 : m / 2.0;
  }
  TruncatedProduct out;
  out.value = static_cast<double>(prod);
  const double Pd = static_cast<double>(P);
  double B;
  if (s > 1.0) {
    B = std::pow(Pd, 1.0 - s) / (s - 1.0) / (1.0 - std::pow(Pd, -s));
  } else {
    // sum_{p > P} chi(p)/p: square-root cancellation heuristic.
    const double cond = static_cast<double>(discriminant_label_real(form, k).modulus());
    B = 2.0 * std::log(cond * Pd) / std::sqrt(Pd);
    out.rigorous = false;
  }
  // Each factor is rounded to double before multiplying.
  const double rounding = static_cast<double>(primes.size() + 1) * std::numeric_limits<double>::epsilon();
  out.tail_bound = out.value * (std::expm1(B) + rounding);
  return out;
}

}  // namespace hlc
