#include "hlc/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlc/number_theory.hpp"
#include "hlc/parallel.hpp"
#include "hlc/sieve.hpp"

namespace hlc {

namespace {

constexpr uint64_t kChunk = uint64_t{1} << 22;

u128 sigma_pp(uint64_t p, int e) {
  u128 s = 1, pk = 1;
  for (int i = 0; i < e; ++i) {
    pk = checked_mul(pk, p);
    s = checked_add(s, pk);
  }
  return s;
}

u128 r2_local(uint64_t p, int e) {
  if (p == 2) return 1;
  if (p % 4 == 1) return static_cast<u128>(e + 1);
  return e % 2 == 0 ? 1 : 0;
}

u128 r4_local(uint64_t p, int e) {
  return p == 2 ? 3 : sigma_pp(p, e);
}

// Two copies of the Eisenstein norm form: 12 * sigma(3-free part).
u128 eisenstein2_local(uint64_t p, int e) {
  return p == 3 ? 1 : sigma_pp(p, e);
}

u128 eisenstein_norm_local(uint64_t p, int e) {
  if (p == 3) return 1;
  if (p % 3 == 1) return static_cast<u128>(e + 1);
  return e % 2 == 0 ? 1 : 0;
}

struct Multiplicative {
  LocalFactor local;
  u128 scale;
};

bool all_ones(const std::vector<int64_t>& v, size_t n) {
  return v.size() == n && std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 1; });
}

// F_A as a multiplicative function, when a divisor formula is known.
std::optional<Multiplicative> f_formula(const FormSpec& form) {
  const auto& A = form.positive_part;
  if (!form.field.is_complex()) {
    if (all_ones(A, 2)) return Multiplicative{r2_local, 4};
    if (all_ones(A, 4)) return Multiplicative{r4_local, 8};
    return std::nullopt;
  }
  if (all_ones(A, 2)) {
    if (form.field.disc == -3) return Multiplicative{eisenstein2_local, 12};
    if (form.field.disc == -4) return Multiplicative{r4_local, 8};
  }
  return std::nullopt;
}

std::optional<Multiplicative> g_formula(const FieldSpec& field) {
  if (field.disc == -3) return Multiplicative{eisenstein_norm_local, 6};
  if (field.disc == -4) return Multiplicative{r2_local, 4};
  return std::nullopt;
}

u128 eval_multiplicative(const Multiplicative& f, uint64_t n) {
  if (n == 0) return 1;
  u128 v = f.scale;
  for (const auto& [p, e] : factorize_u64(n).factors) v = checked_mul(v, f.local(p, e));
  return v;
}

uint64_t checked_u64_mul(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("argument range exceeds 64 bits");
  return r;
}

}  // namespace

const char* provider_name(Provider p) {
  switch (p) {
    case Provider::ThetaConvolution:
      return "theta";
    case Provider::DivisorFormula:
      return "divisor";
    case Provider::Hybrid:
      return "hybrid";
  }
  return "?";
}

Provider parse_provider(const std::string& name) {
  if (name == "theta" || name == "ThetaConvolution") return Provider::ThetaConvolution;
  if (name == "divisor" || name == "DivisorFormula") return Provider::DivisorFormula;
  if (name == "hybrid" || name == "Hybrid") return Provider::Hybrid;
  throw std::invalid_argument("unknown provider '" + name + "' (expected theta, divisor or hybrid)");
}

std::vector<uint32_t> g_order_table(uint64_t mmax, const OrderBasis& order) {
  std::vector<uint32_t> g(mmax + 1, 0);
  const long double absd = static_cast<long double>(-order.disc);
  // N(x + y w) = (x + B y / 2)^2 + |d| y^2 / 4
  const int64_t ymax = static_cast<int64_t>(std::sqrt(4.0L * static_cast<long double>(mmax) / absd)) + 1;
  for (int64_t y = -ymax; y <= ymax; ++y) {
    const long double rest = static_cast<long double>(mmax) - absd * y * y / 4.0L;
    if (rest < 0) continue;
    const long double center = -static_cast<long double>(order.B) * y / 2.0L;
    const long double r = std::sqrt(rest);
    const int64_t xlo = static_cast<int64_t>(std::floor(center - r)) - 1;
    const int64_t xhi = static_cast<int64_t>(std::ceil(center + r)) + 1;
    for (int64_t x = xlo; x <= xhi; ++x) {
      const int64_t nrm = order.norm(x, y);
      if (nrm >= 0 && static_cast<uint64_t>(nrm) <= mmax) ++g[static_cast<uint64_t>(nrm)];
    }
  }
  return g;
}

u128 r2(uint64_t n) {
  return eval_multiplicative({r2_local, 4}, n);
}

u128 r4(uint64_t n) {
  return eval_multiplicative({r4_local, 8}, n);
}

u128 g_order(uint64_t m, const OrderBasis& order) {
  if (auto f = g_formula(FieldSpec{FieldKind::Complex, order.disc})) return eval_multiplicative(*f, m);
  return g_order_table(m, order)[m];
}

SparseSeries variable_theta(int64_t a, const FieldSpec& field, uint64_t nmax) {
  if (a <= 0) throw std::invalid_argument("positive coefficient expected");
  SparseSeries s;
  const uint64_t ua = static_cast<uint64_t>(a);
  if (!field.is_complex()) {
    s.terms.emplace_back(0, 1);
    for (uint64_t x = 1; x * x <= nmax / ua; ++x) s.terms.emplace_back(ua * x * x, 2);
    return s;
  }
  const std::vector<uint32_t> g = g_order_table(nmax / ua, OrderBasis(field.disc));
  for (uint64_t m = 0; m < g.size(); ++m) {
    if (g[m] != 0) s.terms.emplace_back(ua * m, g[m]);
  }
  return s;
}

RepresentationTable theta_table(const std::vector<int64_t>& positive_part, const FieldSpec& field, uint64_t nmax,
                                const RnsOptions& opt) {
  if (nmax > kThetaTableMax) {
    throw std::length_error("theta table of length " + std::to_string(nmax) + " exceeds the memory budget (" +
                            std::to_string(kThetaTableMax) + ")");
  }
  std::vector<SparseSeries> factors;
  double log2_bound = 0;
  for (int64_t a : positive_part) {
    factors.push_back(variable_theta(a, field, nmax));
    log2_bound += std::log2(static_cast<double>(factors.back().total(nmax)));
  }
  return {rns_series_product(factors, nmax, log2_bound + 1.0, opt)};
}

bool divisor_formula_supports_f(const FormSpec& form) {
  return f_formula(form).has_value();
}

bool divisor_formula_supports_g(const FieldSpec& field) {
  return g_formula(field).has_value();
}

std::vector<Provider> feasible_providers(const FormSpec& form, uint64_t T) {
  std::vector<Provider> out;
  const long double nmax = static_cast<long double>(form.a) * T * T;
  const bool theta_ok = nmax <= static_cast<long double>(kThetaTableMax);
  const bool f_ok = divisor_formula_supports_f(form);
  const bool divisor_ok = f_ok && (!form.field.is_complex() || divisor_formula_supports_g(form.field));
  if (theta_ok) out.push_back(Provider::ThetaConvolution);
  if (divisor_ok) out.push_back(Provider::DivisorFormula);
  if (theta_ok || f_ok) out.push_back(Provider::Hybrid);
  return out;
}

CountSeries count_series(const FormSpec& form, int64_t k, uint64_t T, const CountOptions& opt) {
  form.validate();
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const auto feasible = feasible_providers(form, T);
  if (std::find(feasible.begin(), feasible.end(), opt.provider) == feasible.end()) {
    std::string names;
    for (Provider p : feasible) names += std::string(names.empty() ? "" : ", ") + provider_name(p);
    throw std::invalid_argument(std::string("provider '") + provider_name(opt.provider) + "' cannot handle " +
                                serialize_form(form) + " at T=" + std::to_string(T) +
                                "; feasible providers: " + (names.empty() ? "none" : names));
  }
  const auto ff = f_formula(form);
  const bool use_f_formula =
      opt.provider == Provider::DivisorFormula || (opt.provider == Provider::Hybrid && ff.has_value());
  RnsOptions rns;
  rns.threads = opt.threads;
  rns.strategy = opt.strategy;

  CountSeries cs;
  cs.form = form;
  cs.k = k;
  cs.T = T;
  cs.provider = opt.provider;
  cs.values.assign(T + 1, 0);
  const int64_t a = form.a;

  if (!form.field.is_complex()) {
    std::vector<u128> f(T + 1, 0);  // f[t] = F_A(a t^2 - k)
    if (use_f_formula) {
      const std::vector<u128> v = sieve_multiplicative(a, 2, k, 1, T, ff->local, ff->scale, 1, opt.threads);
      std::copy(v.begin(), v.end(), f.begin() + 1);
    } else {
      const uint64_t top = checked_u64_mul(static_cast<uint64_t>(a), checked_u64_mul(T, T));
      if (top >= static_cast<uint64_t>(k)) {
        const RepresentationTable tab = theta_table(form.positive_part, form.field, top - static_cast<uint64_t>(k), rns);
        for (uint64_t t = 1; t <= T; ++t) {
          const int64_t arg = static_cast<int64_t>(static_cast<uint64_t>(a) * t * t) - k;
          if (arg >= 0) f[t] = tab.coeffs[static_cast<uint64_t>(arg)];
        }
      }
    }
    for (uint64_t t = 1; t <= T; ++t) cs.values[t] = checked_add(cs.values[t - 1], checked_mul(2, f[t]));
    return cs;
  }

  const uint64_t mmax = checked_u64_mul(T, T);
  const auto gf = g_formula(form.field);
  const bool use_g_formula =
      opt.provider == Provider::DivisorFormula || (opt.provider == Provider::Hybrid && gf.has_value());
  RepresentationTable tab;
  std::vector<uint32_t> gtab;
  if (!use_f_formula) {
    const uint64_t top = checked_u64_mul(static_cast<uint64_t>(a), mmax);
    if (top >= static_cast<uint64_t>(k)) tab = theta_table(form.positive_part, form.field, top - static_cast<uint64_t>(k), rns);
  }
  if (!use_g_formula) gtab = g_order_table(mmax, OrderBasis(form.field.disc));

  u128 running = 0;
  uint64_t next_t = 1;
  for (uint64_t lo = 1; lo <= mmax; lo += kChunk) {
    const uint64_t hi = std::min(mmax, lo + kChunk - 1);
    std::vector<u128> fv, gv;
    if (use_f_formula) fv = sieve_multiplicative(a, 1, k, lo, hi, ff->local, ff->scale, 1, opt.threads);
    if (use_g_formula) gv = sieve_multiplicative(1, 1, 0, lo, hi, gf->local, gf->scale, 1, opt.threads);
    for (uint64_t m = lo; m <= hi; ++m) {
      u128 fval = 0;
      if (use_f_formula) {
        fval = fv[m - lo];
      } else {
        const int64_t arg = static_cast<int64_t>(static_cast<uint64_t>(a) * m) - k;
        if (arg >= 0) fval = tab.coeffs[static_cast<uint64_t>(arg)];
      }
      if (fval != 0) {
        const u128 gval = use_g_formula ? gv[m - lo] : gtab[m];
        running = checked_add(running, checked_mul(fval, gval));
      }
      while (next_t <= T && next_t * next_t == m) {
        cs.values[next_t] = running;
        ++next_t;
      }
    }
  }
  return cs;
}

}  // namespace hlc
