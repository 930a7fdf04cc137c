#include "hlc/local_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hlc/number_theory.hpp"
#include "hlc/wide.hpp"

namespace hlc {

namespace {

uint64_t mod_of(int64_t v, uint64_t m) {
  const int64_t sm = static_cast<int64_t>(m);
  int64_t r = v % sm;
  return static_cast<uint64_t>(r < 0 ? r + sm : r);
}

uint64_t ipow_u64(uint64_t p, int j) {
  uint64_t r = 1;
  for (int i = 0; i < j; ++i) r *= p;
  return r;
}

std::vector<uint64_t> component_histogram(const DensityComponent& comp, uint64_t M) {
  std::vector<uint64_t> h(M, 0);
  const uint64_t a = mod_of(comp.a, M);
  if (comp.kind == DensityComponent::Kind::Diagonal) {
    for (uint64_t x = 0; x < M; ++x) ++h[mulmod(a, mulmod(x, x, M), M)];
    return h;
  }
  const uint64_t c = mod_of(comp.c, M);
  for (uint64_t x = 0; x < M; ++x) {
    const uint64_t xx = mulmod(x, x, M);
    for (uint64_t y = 0; y < M; ++y) {
      const uint64_t v = (xx + mulmod(x, y, M) + mulmod(c, mulmod(y, y, M), M)) % M;
      ++h[mulmod(a, v, M)];
    }
  }
  return h;
}

template <class T>
T count_solutions(const DensityForm& form, uint64_t target, uint64_t M) {
  // Group identical components so each histogram is built once.
  std::vector<std::pair<DensityComponent, int>> groups;
  for (const auto& c : form.components) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == c; });
    if (it == groups.end()) {
      groups.emplace_back(c, 1);
    } else {
      ++it->second;
    }
  }
  std::vector<T> acc(M, T(0));
  acc[0] = T(1);
  std::vector<T> next(M);
  size_t remaining = form.components.size();
  for (const auto& [comp, mult] : groups) {
    const std::vector<uint64_t> h = component_histogram(comp, M);
    std::vector<std::pair<uint64_t, uint64_t>> nz;
    for (uint64_t v = 0; v < M; ++v) {
      if (h[v] != 0) nz.emplace_back(v, h[v]);
    }
    for (int r = 0; r < mult; ++r) {
      if (--remaining == 0) {
        // Last variable: only the target residue is needed.
        T total(0);
        for (const auto& [v, cnt] : nz) {
          const uint64_t u = (target + M - v) % M;
          total += acc[u] * T(cnt);
        }
        return total;
      }
      std::fill(next.begin(), next.end(), T(0));
      for (uint64_t u = 0; u < M; ++u) {
        if (acc[u] == T(0)) continue;
        const T au = acc[u];
        for (const auto& [v, cnt] : nz) {
          uint64_t w = u + v;
          if (w >= M) w -= M;
          next[w] += au * T(cnt);
        }
      }
      std::swap(acc, next);
    }
  }
  return acc[target];
}

Integer to_integer_u128(u128 v) {
  Integer hi = to_integer_u64(static_cast<uint64_t>(v >> 64));
  Integer lo = to_integer_u64(static_cast<uint64_t>(v));
  return (hi << 64) + lo;
}

bool has_block(const DensityForm& form) {
  return std::any_of(form.components.begin(), form.components.end(),
                     [](const DensityComponent& c) { return c.kind == DensityComponent::Kind::Block; });
}

}  // namespace

int DensityForm::real_rank() const {
  int r = 0;
  for (const auto& c : components) r += c.real_rank();
  return r;
}

DensityForm diagonal_density_form(const std::vector<int64_t>& diag) {
  DensityForm f;
  for (int64_t a : diag) f.components.push_back(DensityComponent::diagonal(a));
  return f;
}

DensityForm real_density_form(const FormSpec& q) {
  if (q.field.is_complex()) throw std::invalid_argument("real_density_form needs a real form");
  return diagonal_density_form(q.diagonal());
}

DensityForm complexify(const FormSpec& h) {
  if (!h.field.is_complex()) throw std::invalid_argument("complexify needs a complex form");
  const int64_t d = h.field.disc;
  DensityForm f;
  for (int64_t a : h.diagonal()) {
    if (((d % 4) + 4) % 4 == 0) {
      f.components.push_back(DensityComponent::diagonal(a));
      f.components.push_back(DensityComponent::diagonal(-a * d / 4));
    } else {
      f.components.push_back(DensityComponent::block(a, (1 - d) / 4));
    }
  }
  return f;
}

DensityForm complexify_diagonal(const FormSpec& h) {
  if (!h.field.is_complex()) throw std::invalid_argument("complexify needs a complex form");
  const int64_t d = h.field.disc;
  DensityForm f;
  for (int64_t a : h.diagonal()) {
    if (((d % 4) + 4) % 4 == 0) {
      f.components.push_back(DensityComponent::diagonal(a));
      f.components.push_back(DensityComponent::diagonal(-a * d / 4));
    } else {
      // 4 * block = (2x + y)^2 - d y^2; over Z_p (p odd) this is diag(a, -a d), equivalent to diag(a, -a d / 4).
      f.components.push_back(DensityComponent::diagonal(a));
      f.components.push_back(DensityComponent::diagonal(-a * d));
    }
  }
  return f;
}

Rational delta_p_good_real(const std::vector<int64_t>& diag, int64_t k, uint64_t p) {
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  if (p == 2) throw std::domain_error("p = 2 is never a good prime");
  const int m = static_cast<int>(diag.size());
  int64_t det_mod = 1;  // det mod p, sign kept through kronecker
  Integer det = 1;
  for (int64_t a : diag) {
    if (a % static_cast<int64_t>(p) == 0) throw std::domain_error("p divides det(Q)");
    det *= to_integer(a);
  }
  const Integer pz = to_integer_u64(p);
  Integer dr;
  mpz_fdiv_r(dr.get_mpz_t(), det.get_mpz_t(), pz.get_mpz_t());
  det_mod = to_int64(dr);

  const int c = valuation(k, p);
  int64_t ell = k;
  for (int i = 0; i < c; ++i) ell /= static_cast<int64_t>(p);
  const int64_t ps = static_cast<int64_t>(p);
  const Rational inv_p = make_rational(1, ps);

  if (m % 2 == 0) {
    const int64_t sgn = (m / 2) % 2 == 0 ? 1 : -1;
    const int eps = kronecker(sgn * det_mod, ps);
    const Rational eq = Rational(eps) * rpow(inv_p, (m - 2) / 2);
    Rational geo = 0;  // sum_{i=0}^{c} (eps q)^i
    for (int i = 0; i <= c; ++i) geo += rpow(eq, i);
    return (1 - Rational(eps) * rpow(inv_p, m / 2)) * geo;
  }
  const int64_t sgn = ((m - 1) / 2) % 2 == 0 ? 1 : -1;
  const int eps = kronecker(static_cast<int64_t>(mulmod(mod_of(sgn * det_mod, p), mod_of(ell, p), p)), ps);
  const Rational q2 = rpow(inv_p, m - 2);  // q^2
  const Rational top = 1 - rpow(inv_p, m - 1);
  if (c % 2 == 1) {
    // (q^{c+1} - 1) / (q^2 - 1) = sum_{i=0}^{(c-1)/2} q^{2i}
    Rational geo = 0;
    for (int i = 0; i <= (c - 1) / 2; ++i) geo += rpow(q2, i);
    return top * geo;
  }
  Rational geo = 0;  // (q^c - 1) / (q^2 - 1)
  for (int i = 0; i < c / 2; ++i) geo += rpow(q2, i);
  return top * geo + (1 + Rational(eps) * rpow(inv_p, (m - 1) / 2)) * rpow(q2, c / 2);
}

Rational delta_p_good_complex(const FormSpec& h, int64_t k, uint64_t p) {
  if (!h.field.is_complex()) throw std::invalid_argument("complex form expected");
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const int64_t ps = static_cast<int64_t>(p);
  if (p == 2 || h.field.disc % ps == 0) throw std::domain_error("bad prime for the hermitian form");
  for (int64_t a : h.diagonal()) {
    if (a % ps == 0) throw std::domain_error("p divides det(H)");
  }
  const int m = h.m();
  const int chi = kronecker(h.field.disc, ps);
  const int eps = (m % 2 == 0) ? 1 : chi;
  const int c = valuation(k, p);
  const Rational inv_p = make_rational(1, ps);
  const Rational eq = Rational(eps) * rpow(inv_p, m - 1);
  Rational geo = 0;
  for (int i = 0; i <= c; ++i) geo += rpow(eq, i);
  return (1 - Rational(eps) * rpow(inv_p, m)) * geo;
}

Rational residue_count_level(const DensityForm& form, int64_t k, uint64_t p, int j) {
  if (j < 1) throw std::invalid_argument("level must be >= 1");
  if (form.components.empty()) throw std::invalid_argument("empty form");
  const uint64_t M = ipow_u64(p, j);
  const int R = form.real_rank();
  const uint64_t target = mod_of(k, M);
  const double bits = R * std::log2(static_cast<double>(M));
  Integer count;
  if (bits <= 126.0) {
    count = to_integer_u128(count_solutions<u128>(form, target, M));
  } else {
    count = count_solutions<Integer>(form, target, M);
  }
  Rational v(count, ipow(to_integer_u64(p), static_cast<unsigned long>(j) * static_cast<unsigned long>(R - 1)));
  v.canonicalize();
  return v;
}

int residue_count_j_min(const DensityForm& form, int64_t k, uint64_t p) {
  int vmax = 0;
  for (const auto& c : form.components) {
    int v = valuation(c.a, p);
    if (c.kind == DensityComponent::Kind::Block) {
      const int64_t disc = 1 - 4 * c.c;
      v += valuation(disc, p);
    }
    vmax = std::max(vmax, v);
  }
  return 2 * valuation(k, p) + vmax + 1 + (p == 2 ? 2 : 0);
}

LocalDensityResult delta_p_residue_count(const DensityForm& form, int64_t k, uint64_t p, int j_max) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  if (j_max == 0) j_max = p == 2 ? 8 : p == 3 ? 5 : 4;
  if (j_max < 2) throw std::invalid_argument("j_max must be >= 2");
  const int j_min = std::max(1, residue_count_j_min(form, k, p));
  j_max = std::max(j_max, j_min + 1);
  const uint64_t cap = has_block(form) ? kResidueBlockModulusCap : kResidueModulusCap;

  LocalDensityResult res;
  res.p = p;
  res.method = DensityMethod::ResidueCount;
  Rational prev = residue_count_level(form, k, p, j_min);
  for (int j = j_min + 1; j <= j_max; ++j) {
    if (ipow_u64(p, j) > cap) break;
    Rational cur = residue_count_level(form, k, p, j);
    if (cur == prev) {
      res.value = cur;
      res.stabilized_at = j - 1;
      res.stable = true;
      return res;
    }
    prev = cur;
  }
  res.value = prev;
  res.stabilized_at = 0;
  res.stable = false;
  return res;
}

LocalDensityResult delta_p(const FormSpec& form, int64_t k, uint64_t p) {
  const Integer det = form.det();
  const bool divides_det = mpz_divisible_ui_p(det.get_mpz_t(), p) != 0;
  if (form.field.is_complex()) {
    const bool good = p != 2 && !divides_det && form.field.disc % static_cast<int64_t>(p) != 0;
    if (good) return {p, delta_p_good_complex(form, k, p), DensityMethod::ClosedFormGood, 0, true};
    return delta_p_residue_count(complexify(form), k, p);
  }
  if (p != 2 && !divides_det) {
    return {p, delta_p_good_real(form.diagonal(), k, p), DensityMethod::ClosedFormGood, 0, true};
  }
  return delta_p_residue_count(real_density_form(form), k, p);
}

}  // namespace hlc
