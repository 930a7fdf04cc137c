#pragma once
// Representation numbers F_A, norm counts G, and the count series t -> N_t(Q,-k).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlc/forms.hpp"
#include "hlc/modular.hpp"
#include "hlc/wide.hpp"

namespace hlc {

enum class Provider { ThetaConvolution, DivisorFormula, Hybrid };

const char* provider_name(Provider p);
Provider parse_provider(const std::string& name);

// coeffs[N] = #{x : A[x] = N} for 0 <= N <= nmax.
struct RepresentationTable {
  std::vector<u128> coeffs;
};

// Largest table theta_table will build (coefficients 0..nmax).
inline constexpr uint64_t kThetaTableMax = 16'000'000;

// Theta series of one variable a*N(z) (complex) or a*x^2 (real), truncated at nmax.
SparseSeries variable_theta(int64_t a, const FieldSpec& field, uint64_t nmax);

RepresentationTable theta_table(const std::vector<int64_t>& positive_part, const FieldSpec& field, uint64_t nmax,
                                const RnsOptions& opt = {});

u128 r2(uint64_t n);
u128 r4(uint64_t n);
u128 g_order(uint64_t m, const OrderBasis& order);

// G_O(m) for m <= mmax by lattice enumeration.
std::vector<uint32_t> g_order_table(uint64_t mmax, const OrderBasis& order);

struct CountSeries {
  FormSpec form;
  int64_t k = 1;
  uint64_t T = 0;
  std::vector<u128> values;  // values[t] = N_t(Q,-k) for 0 <= t <= T
  Provider provider = Provider::Hybrid;
};

struct CountOptions {
  Provider provider = Provider::Hybrid;
  int threads = 1;
  ConvolutionStrategy strategy = ConvolutionStrategy::Auto;
};

// Whether the divisor-sum formulas cover F_A for this form.
bool divisor_formula_supports_f(const FormSpec& form);
bool divisor_formula_supports_g(const FieldSpec& field);

// Providers able to compute the series up to T; empty if none.
std::vector<Provider> feasible_providers(const FormSpec& form, uint64_t T);

CountSeries count_series(const FormSpec& form, int64_t k, uint64_t T, const CountOptions& opt = {});

}  // namespace hlc
