#pragma once
// Eigenvalue-side constants and the translation sigma -> tau, lambda_1, verdict.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlc/forms.hpp"
#include "hlc/rational.hpp"

namespace hlc {

enum class Classification { ExceptionalSpectrumEvidence, LowerBoundEvidence, Inconclusive };

const char* classification_name(Classification c);

struct SpectralContext {
  FieldKind field = FieldKind::Real;
  int n = 2;
  Rational rho;
  Rational upsilon;            // proven bound on tau - 2 rho
  Rational omega;              // tau - 2 rho without exceptional spectrum
  Rational omega_lambda;       // 4n/(n+1)^2 rho^2
  Rational known_lower_bound;  // proven lambda_1 bound

  Rational tau_threshold() const;  // 2 rho n / (n + 1)
};

SpectralContext spectral_context(FieldKind field, int n);

// rho^2 - (tau - rho)^2
Rational lambda_from_tau(const Rational& tau, const SpectralContext& ctx);

inline constexpr double kDefaultMargin = 0.05;

struct SpectralVerdict {
  double sigma = 0;
  double tau_hat = 0;
  std::optional<double> nu_hat;
  std::optional<double> lambda_hat;
  Classification classification = Classification::Inconclusive;
};

SpectralVerdict infer_lambda(double sigma, const SpectralContext& ctx, double margin = kDefaultMargin);

struct KeyedVerdict {
  FieldKind field;
  int n;
  int64_t a;
  SpectralVerdict verdict;
};

struct ConjectureRow {
  FieldKind field;
  int n;
  size_t count = 0;
  double upsilon = 0, omega = 0;
  double sigma_min = 0, sigma_max = 0;
  std::optional<double> lambda_min, lambda_max;
  std::string conclusion;
};

std::vector<ConjectureRow> conjecture_report(const std::vector<KeyedVerdict>& verdicts);
std::string format_report(const std::vector<ConjectureRow>& rows);
nlohmann::json to_json(const SpectralVerdict& v);
nlohmann::json to_json(const std::vector<ConjectureRow>& rows);

}  // namespace hlc
