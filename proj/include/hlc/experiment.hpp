#pragma once
// End-to-end pipeline: coefficient, counts, Psi fit, spectral verdict; table and plot-data emitters.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlc/analysis.hpp"
#include "hlc/counting.hpp"
#include "hlc/main_coefficient.hpp"
#include "hlc/spectral.hpp"

namespace hlc {

// Desk-scale and full-scale default T per field.
uint64_t default_T(const FieldSpec& field, bool full_scale);

struct ExperimentConfig {
  FormSpec form;
  int64_t k = 1;
  uint64_t T = 0;      // 0 picks default_T
  uint64_t t_min = 0;  // 0 picks default_t_min(T)
  Provider provider = Provider::Hybrid;
  int threads = 1;
  bool cache = true;
  std::filesystem::path cache_dir;  // empty picks default_cache_dir()
  DiscriminantRule rule = DiscriminantRule::WorkedExample;
  double margin = kDefaultMargin;

  // Fills defaults and checks T > t_min >= 1, k >= 1.
  ExperimentConfig resolved() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  MainCoefficient coefficient;
  u128 n_T = 0;
  double psi_T = 0;
  FitResult fit;
  SpectralVerdict verdict;
  std::vector<PsiPoint> psi;  // full series, not serialized
  bool from_cache = false;
  std::string cache_warning;
  double seconds = 0;
};

// Throws ExperimentInvalid when C(Q,-k) = 0.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Timing is kept under a separate "timing" key and only emitted when requested.
nlohmann::json to_json(const ExperimentReport& r, bool include_timing = true);

// The symbolic or numeric-only text of C.
std::string coefficient_text(const MainCoefficient& mc);

// Envelope points with the fitted curve and the Omega / Upsilon curves, all anchored at the first point.
void write_plot_data(std::ostream& out, const ExperimentReport& r);

struct TableFamily {
  FieldKind field;
  int n;
};

// "real-n2|real-n4|real-n6|real-n8|cx-n2|cx-n3|cx-n4|cx-n5".
TableFamily parse_table_family(const std::string& name);

struct TableConfig {
  TableFamily family;
  int64_t disc = -3;  // complex families only
  int64_t a_lo = 1, a_hi = 15;
  int64_t k = 1;
  uint64_t T = 0;
  uint64_t t_min = 0;
  Provider provider = Provider::Hybrid;
  int threads = 1;
  bool cache = true;
  std::filesystem::path cache_dir;
  DiscriminantRule rule = DiscriminantRule::WorkedExample;
  bool coefficients_only = false;  // skip counting, leave count columns blank
};

inline constexpr const char* kTableHeader = "a,C_exact,C_numeric,N_T,psi_T,sigma,B,classification,lambda_hat";

struct TableRun {
  std::vector<KeyedVerdict> verdicts;
};

// One CSV row per a; rows with C = 0 leave the experiment columns blank.
TableRun write_table(std::ostream& out, const TableConfig& cfg);

}  // namespace hlc
