#include "hlc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace hlc {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::ExceptionalSpectrumEvidence:
      return "ExceptionalSpectrumEvidence";
    case Classification::LowerBoundEvidence:
      return "LowerBoundEvidence";
    case Classification::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Rational SpectralContext::tau_threshold() const {
  return 2 * rho * Rational(n) / Rational(n + 1);
}

SpectralContext spectral_context(FieldKind field, int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  SpectralContext c;
  c.field = field;
  c.n = n;
  const Rational two_over = make_rational(2, n + 1);
  if (field == FieldKind::Real) {
    c.rho = make_rational(n - 1, 2);
    c.upsilon = n == 2 ? make_rational(-1, 3) : make_rational(-1, 2);
    c.omega = -1 + two_over;
    c.known_lower_bound = n == 2 ? make_rational(975, 4096) : make_rational(2 * n - 3, 4);
  } else {
    c.rho = n;
    c.upsilon = -1;
    c.omega = -2 + two_over;
    c.known_lower_bound = 2 * n - 1;
  }
  c.omega_lambda = make_rational(4 * n, (n + 1) * (n + 1)) * c.rho * c.rho;
  return c;
}

Rational lambda_from_tau(const Rational& tau, const SpectralContext& ctx) {
  const Rational nu = tau - ctx.rho;
  return ctx.rho * ctx.rho - nu * nu;
}

SpectralVerdict infer_lambda(double sigma, const SpectralContext& ctx, double margin) {
  if (!(sigma < 0)) throw std::invalid_argument("sigma must be negative");
  SpectralVerdict v;
  v.sigma = sigma;
  const double rho = ctx.rho.get_d();
  v.tau_hat = 2 * rho + sigma;
  if (v.tau_hat > ctx.tau_threshold().get_d()) {
    v.nu_hat = v.tau_hat - rho;
    v.lambda_hat = rho * rho - *v.nu_hat * *v.nu_hat;
  }
  const double omega = ctx.omega.get_d();
  if (sigma > omega + margin) {
    v.classification = Classification::ExceptionalSpectrumEvidence;
  } else if (sigma < omega - margin) {
    v.classification = Classification::LowerBoundEvidence;
  } else {
    v.classification = Classification::Inconclusive;
  }
  return v;
}

std::vector<ConjectureRow> conjecture_report(const std::vector<KeyedVerdict>& verdicts) {
  std::map<std::pair<int, int>, std::vector<const KeyedVerdict*>> groups;
  for (const auto& kv : verdicts) groups[{kv.field == FieldKind::Real ? 0 : 1, kv.n}].push_back(&kv);
  std::vector<ConjectureRow> rows;
  for (const auto& [key, list] : groups) {
    ConjectureRow r;
    r.field = key.first == 0 ? FieldKind::Real : FieldKind::Complex;
    r.n = key.second;
    r.count = list.size();
    const SpectralContext ctx = spectral_context(r.field, r.n);
    r.upsilon = ctx.upsilon.get_d();
    r.omega = ctx.omega.get_d();
    r.sigma_min = r.sigma_max = list.front()->verdict.sigma;
    size_t exceptional = 0, lower = 0;
    for (const KeyedVerdict* kv : list) {
      const SpectralVerdict& v = kv->verdict;
      r.sigma_min = std::min(r.sigma_min, v.sigma);
      r.sigma_max = std::max(r.sigma_max, v.sigma);
      if (v.lambda_hat) {
        r.lambda_min = r.lambda_min ? std::min(*r.lambda_min, *v.lambda_hat) : *v.lambda_hat;
        r.lambda_max = r.lambda_max ? std::max(*r.lambda_max, *v.lambda_hat) : *v.lambda_hat;
      }
      if (v.classification == Classification::ExceptionalSpectrumEvidence) ++exceptional;
      if (v.classification == Classification::LowerBoundEvidence) ++lower;
    }
    if (exceptional == r.count) {
      r.conclusion = "exceptional spectrum (supports existence conjecture)";
    } else if (lower == r.count) {
      r.conclusion = "lambda_1 >= 4n/(n+1)^2 rho^2 (supports lower-bound conjecture)";
    } else {
      r.conclusion = "mixed or inconclusive";
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_report(const std::vector<ConjectureRow>& rows) {
  std::string out = "F   n   Upsilon   Omega    sigma in              lambda_1 in          rows  conclusion\n";
  char buf[256];
  for (const auto& r : rows) {
    std::string lam = "-";
    if (r.lambda_min) {
      std::snprintf(buf, sizeof buf, "[%.2f, %.2f]", *r.lambda_min, *r.lambda_max);
      lam = buf;
    }
    std::snprintf(buf, sizeof buf, "%-3s %-3d %-9.2f %-8.2f [%.3f, %.3f]  %-20s %-5zu %s\n",
                  r.field == FieldKind::Real ? "R" : "C", r.n, r.upsilon, r.omega, r.sigma_min, r.sigma_max,
                  lam.c_str(), r.count, r.conclusion.c_str());
    out += buf;
  }
  return out;
}

nlohmann::json to_json(const SpectralVerdict& v) {
  nlohmann::json j{{"sigma", v.sigma},
                   {"tau_hat", v.tau_hat},
                   {"classification", classification_name(v.classification)}};
  j["nu_hat"] = v.nu_hat ? nlohmann::json(*v.nu_hat) : nlohmann::json(nullptr);
  j["lambda_hat"] = v.lambda_hat ? nlohmann::json(*v.lambda_hat) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const std::vector<ConjectureRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"field", r.field == FieldKind::Real ? "R" : "C"},
                     {"n", r.n},
                     {"rows", r.count},
                     {"upsilon", r.upsilon},
                     {"omega", r.omega},
                     {"sigma", {r.sigma_min, r.sigma_max}},
                     {"conclusion", r.conclusion}};
    j["lambda"] = r.lambda_min ? nlohmann::json({*r.lambda_min, *r.lambda_max}) : nlohmann::json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace hlc
