#include "hlc/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace hlc {

PsiSeries psi_series(const std::vector<u128>& values, const HighFloat& c, const Rational& two_rho) {
  if (c == 0) throw ExperimentInvalid("C(Q,-k) = 0: -k is not represented, the experiment is undefined");
  if (two_rho.get_den() != 1 || two_rho < 0) throw std::invalid_argument("2 rho must be a nonnegative integer");
  const unsigned long e = two_rho.get_num().get_ui();
  PsiSeries out;
  out.c_numeric = c.convert_to<double>();
  out.two_rho = two_rho;
  out.points.reserve(values.size());
  for (uint64_t t = 1; t < values.size(); ++t) {
    const HighFloat scale = boost::multiprecision::pow(HighFloat(t), static_cast<int>(e));
    const HighFloat diff = to_high(values[t]) / scale - c;
    out.points.push_back({t, boost::multiprecision::abs(diff).convert_to<double>()});
  }
  return out;
}

PsiSeries psi_series(const CountSeries& counts, const MainCoefficient& mc) {
  if (mc.is_zero()) throw ExperimentInvalid("C(Q,-k) = 0: -k is not represented, the experiment is undefined");
  return psi_series(counts.values, mc.hp, mc.two_rho);
}

std::vector<PsiPoint> envelope(const std::vector<PsiPoint>& points, uint64_t t_min) {
  std::vector<PsiPoint> out;
  double running = 0;
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    if (it->t < t_min) break;
    if (it->psi > running) {
      out.push_back(*it);
      running = it->psi;
    }
  }
  if (out.empty()) throw ExperimentInvalid("empty envelope: Psi vanishes on the fit window");
  std::reverse(out.begin(), out.end());
  return out;
}

PowerLaw power_law_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("power-law fit needs at least two points");
  const long double h = static_cast<long double>(points.size());
  long double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0)) throw std::invalid_argument("power-law fit needs positive coordinates");
    sx += std::log(static_cast<long double>(x));
    sy += std::log(static_cast<long double>(y));
  }
  const long double mx = sx / h, my = sy / h;
  long double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const long double dx = std::log(static_cast<long double>(x)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(static_cast<long double>(y)) - my);
  }
  if (sxx == 0) throw std::invalid_argument("power-law fit needs distinct x values");
  const long double sigma = sxy / sxx;
  return {static_cast<double>(sigma), static_cast<double>(std::exp(my - sigma * mx))};
}

uint64_t default_t_min(uint64_t T) {
  if (T < 1) return 1;
  const double e = std::round(0.5 * std::log10(static_cast<double>(T)));
  return static_cast<uint64_t>(std::llround(std::pow(10.0, e)));
}

FitResult estimate_decay(const PsiSeries& psi, uint64_t t_min) {
  FitResult fit;
  fit.T = psi.points.empty() ? 0 : psi.points.back().t;
  if (t_min < 1 || t_min >= fit.T) throw std::invalid_argument("fit window needs 1 <= t_min < T");
  fit.t_min = t_min;
  fit.envelope = envelope(psi.points, t_min);
  if (fit.envelope.size() < 2) throw ExperimentInvalid("envelope has a single point; widen the fit window");
  fit.point_count = fit.envelope.size();
  std::vector<std::pair<double, double>> xy;
  xy.reserve(fit.envelope.size());
  for (const auto& p : fit.envelope) xy.emplace_back(static_cast<double>(p.t), p.psi);
  const PowerLaw pl = power_law_fit(xy);
  fit.sigma = pl.sigma;
  fit.B = pl.B;
  return fit;
}

FitResult estimate_decay(const CountSeries& counts, const MainCoefficient& mc, uint64_t t_min) {
  return estimate_decay(psi_series(counts, mc), t_min);
}

nlohmann::json to_json(const FitResult& fit) {
  nlohmann::json env = nlohmann::json::array();
  for (const auto& p : fit.envelope) env.push_back({p.t, p.psi});
  return {{"sigma", fit.sigma},
          {"B", fit.B},
          {"window", {fit.t_min, fit.T}},
          {"envelope_size", fit.envelope.size()},
          {"envelope", env}};
}

}  // namespace hlc
