#pragma once
// Error function Psi(t) = |N_t / t^{2 rho} - C|, record envelope, and log-log power-law fit.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hlc/counting.hpp"
#include "hlc/main_coefficient.hpp"

namespace hlc {

class ExperimentInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PsiPoint {
  uint64_t t;
  double psi;
  bool operator==(const PsiPoint&) const = default;
};

struct PsiSeries {
  std::vector<PsiPoint> points;  // t = 1..T
  double c_numeric = 0;
  Rational two_rho;
};

// values[t] = N_t for t = 0..T; two_rho must be a nonnegative integer.
PsiSeries psi_series(const std::vector<u128>& values, const HighFloat& c, const Rational& two_rho);
PsiSeries psi_series(const CountSeries& counts, const MainCoefficient& mc);

// Points with t >= t_min whose psi strictly exceeds every later psi (and 0), ascending in t.
std::vector<PsiPoint> envelope(const std::vector<PsiPoint>& points, uint64_t t_min);

struct PowerLaw {
  double sigma;
  double B;
};

// Least squares for log y = log B + sigma log x.
PowerLaw power_law_fit(const std::vector<std::pair<double, double>>& points);

struct FitResult {
  double sigma = 0;
  double B = 0;
  std::vector<PsiPoint> envelope;
  uint64_t t_min = 1;
  uint64_t T = 0;
  size_t point_count = 0;
};

// 10^round(log10 sqrt(T)), at least 1.
uint64_t default_t_min(uint64_t T);

FitResult estimate_decay(const PsiSeries& psi, uint64_t t_min);
FitResult estimate_decay(const CountSeries& counts, const MainCoefficient& mc, uint64_t t_min);

nlohmann::json to_json(const FitResult& fit);

}  // namespace hlc
