// hlc: main coefficients, representation counts, decay fits and spectral verdicts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hlc/analysis.hpp"
#include "hlc/count_cache.hpp"
#include "hlc/counting.hpp"
#include "hlc/experiment.hpp"
#include "hlc/global_density.hpp"
#include "hlc/main_coefficient.hpp"
#include "hlc/spectral.hpp"

namespace fs = std::filesystem;
using namespace hlc;

namespace {

struct Globals {
  std::string form;
  int64_t k = 1;
  uint64_t T = 0;
  uint64_t t_min = 0;
  std::string provider = "hybrid";
  int threads = 1;
  std::string out;
  std::string cache_dir;
  std::optional<int64_t> disc;
  std::string compat_mode = "worked";
  bool full_scale = false;
  bool no_cache = false;
};

DiscriminantRule rule_of(const Globals& g) {
  return g.compat_mode == "literal" ? DiscriminantRule::Literal : DiscriminantRule::WorkedExample;
}

FormSpec form_of(const Globals& g) {
  if (g.form.empty()) throw std::invalid_argument("--form is required");
  FormSpec f = parse_form(g.form);
  if (g.disc) f.field = FieldSpec::complex(*g.disc);
  f.validate();
  return f;
}

uint64_t T_of(const Globals& g, const FieldSpec& field) {
  if (g.T != 0) return g.T;
  const uint64_t T = default_T(field, g.full_scale);
  if (g.full_scale)
    std::cerr << "warning: --full-scale selects T=" << T << "; this run may take hours\n";
  return T;
}

fs::path cache_dir_of(const Globals& g) { return g.cache_dir.empty() ? default_cache_dir() : fs::path(g.cache_dir); }

// Writes to --out when given, otherwise stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

int cmd_density(const Globals& g, uint64_t P) {
  const FormSpec form = form_of(g);
  const GlobalDensity d = delta_global(form, -g.k, rule_of(g));
  std::cout << "form:    " << serialize_form(form) << "\n";
  std::cout << "delta:   " << (d.symbolic ? d.value.pretty() : std::string("(no closed form)")) << "\n";
  std::cout << "numeric: " << d.numeric.str(20) << "\n";
  if (!d.series_part.empty()) std::cout << "series:  " << d.series_part << "\n";
  for (const auto& lp : d.bad_primes)
    std::cout << "delta_" << lp.p << " = " << to_string(lp.value)
              << (lp.method == DensityMethod::ClosedFormGood ? "  (closed form)" : "  (residue count")
              << (lp.method == DensityMethod::ResidueCount ? ", level " + std::to_string(lp.stabilized_at) + ")" : "")
              << (lp.stable ? "" : "  UNSTABLE") << "\n";
  if (P > 0) {
    const TruncatedProduct tp = delta_truncated_product(form, -g.k, P);
    std::printf("product: %.12g +- %.3g (P=%llu%s)\n", tp.value, tp.tail_bound, static_cast<unsigned long long>(P),
                tp.rigorous ? "" : ", heuristic bound");
  }
  return 0;
}

int cmd_coefficient(const Globals& g) {
  const FormSpec form = form_of(g);
  const MainCoefficient mc = main_coefficient(form, g.k, rule_of(g));
  std::cout << "form:    " << serialize_form(form) << "\n";
  std::cout << "C:       " << coefficient_text(mc) << "\n";
  std::cout << "numeric: " << mc.hp.str(20) << "\n";
  std::cout << "C':      " << mc.c_prime.pretty() << "\n";
  std::cout << "delta:   " << (mc.delta.symbolic ? mc.delta.value.pretty() : mc.delta.numeric.str(20)) << "\n";
  std::cout << "2rho:    " << to_string(mc.two_rho) << "\n";
  return 0;
}

CountOptions count_options(const Globals& g) {
  CountOptions opt;
  opt.provider = parse_provider(g.provider);
  opt.threads = g.threads;
  return opt;
}

int cmd_count(const Globals& g) {
  const FormSpec form = form_of(g);
  const uint64_t T = T_of(g, form.field);
  const CountOptions opt = count_options(g);
  CountSeries cs;
  if (g.out.empty()) {
    CachedCount cc = load_or_compute(cache_dir_of(g), form, g.k, T, opt);
    if (!cc.warning.empty()) std::cerr << "warning: " << cc.warning << "\n";
    cs = std::move(cc.series);
    std::cerr << (cc.from_cache ? "loaded " : "wrote ") << (cache_dir_of(g) / cache_file_name(form, g.k, T, opt.provider))
              << "\n";
  } else {
    cs = count_series(form, g.k, T, opt);
    write_count_csv(fs::path(g.out), cs);
  }
  std::cout << T << "," << to_string(cs.values.back()) << "\n";
  return 0;
}

ExperimentConfig experiment_config(const Globals& g) {
  ExperimentConfig c;
  c.form = form_of(g);
  c.k = g.k;
  c.T = T_of(g, c.form.field);
  c.t_min = g.t_min;
  c.provider = parse_provider(g.provider);
  c.threads = g.threads;
  c.cache = !g.no_cache;
  c.cache_dir = cache_dir_of(g);
  c.rule = rule_of(g);
  return c;
}

int cmd_fit(const Globals& g, const std::string& counts_path) {
  if (counts_path.empty()) {
    const ExperimentReport r = run_experiment(experiment_config(g));
    emit(g, to_json(r.fit).dump(2) + "\n");
    return 0;
  }
  const CountSeries cs = read_count_csv(fs::path(counts_path));
  const MainCoefficient mc = main_coefficient(cs.form, cs.k, rule_of(g));
  const uint64_t t_min = g.t_min ? g.t_min : default_t_min(cs.T);
  emit(g, to_json(estimate_decay(cs, mc, t_min)).dump(2) + "\n");
  return 0;
}

int cmd_experiment(const Globals& g, bool timing) {
  const ExperimentReport r = run_experiment(experiment_config(g));
  if (!r.cache_warning.empty()) std::cerr << "warning: " << r.cache_warning << "\n";
  const std::string json = to_json(r, timing).dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << json;
    return 0;
  }
  const fs::path dir(g.out);
  fs::create_directories(dir);
  std::ofstream(dir / "report.json", std::ios::binary) << json;
  {
    std::ofstream row(dir / "row.csv", std::ios::binary);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%lld,\"%s\",%.12g,%s,%.6e,%.6f,%.6g,%s,", static_cast<long long>(r.config.form.a),
                  coefficient_text(r.coefficient).c_str(), r.coefficient.numeric, to_string(r.n_T).c_str(), r.psi_T,
                  r.fit.sigma, r.fit.B, classification_name(r.verdict.classification));
    row << kTableHeader << "\n" << buf;
    if (r.verdict.lambda_hat) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.verdict.lambda_hat);
      row << buf;
    }
    row << "\n";
  }
  std::ofstream plot(dir / "plot.dat", std::ios::binary);
  write_plot_data(plot, r);
  std::cout << "sigma=" << r.fit.sigma << " classification=" << classification_name(r.verdict.classification)
            << " -> " << dir << "\n";
  return 0;
}

int cmd_plot_data(const Globals& g) {
  const ExperimentReport r = run_experiment(experiment_config(g));
  std::ostringstream s;
  write_plot_data(s, r);
  emit(g, s.str());
  return 0;
}

std::pair<int64_t, int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int64_t v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad --a-range '" + text + "' (expected LO..HI)");
  }
}

int cmd_table(const Globals& g, const std::string& family, const std::string& range, bool coefficients_only,
              bool report) {
  TableConfig c;
  c.family = parse_table_family(family);
  if (g.disc) c.disc = *g.disc;
  std::tie(c.a_lo, c.a_hi) = parse_range(range);
  c.k = g.k;
  const FieldSpec field = c.family.field == FieldKind::Real ? FieldSpec::real() : FieldSpec::complex(c.disc);
  c.T = coefficients_only ? 0 : T_of(g, field);
  c.t_min = g.t_min;
  c.provider = parse_provider(g.provider);
  c.threads = g.threads;
  c.cache = !g.no_cache;
  c.cache_dir = cache_dir_of(g);
  c.rule = rule_of(g);
  c.coefficients_only = coefficients_only;
  std::ostringstream s;
  const TableRun run = write_table(g.out.empty() ? std::cout : s, c);
  if (!g.out.empty()) emit(g, s.str());
  if (report && !run.verdicts.empty()) std::cerr << format_report(conjecture_report(run.verdicts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hlc: lattice point counts for signature (n,1) forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--form", g.form, "form 'a1,...,an;a' with optional '@R' or '@C:disc'");
  app.add_option("--k", g.k, "represented value is -k")->check(CLI::PositiveNumber);
  app.add_option("--T", g.T, "largest |x_{n+1}| (default 1e5 real, 1e3 complex)");
  app.add_option("--tmin", g.t_min, "left end of the fit window (default 10^round(log10 sqrt T))");
  app.add_option("--provider", g.provider, "theta | divisor | hybrid")->check(CLI::IsMember({"theta", "divisor", "hybrid"}));
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "output file (experiment: output directory)");
  app.add_option("--cache-dir", g.cache_dir, "count cache directory (default $HLC_CACHE_DIR or .hlc-cache)");
  app.add_option("--disc", g.disc, "discriminant of the imaginary quadratic field; makes the form hermitian");
  app.add_option("--compat-mode", g.compat_mode, "discriminant rule for the series factor: worked | literal")
      ->check(CLI::IsMember({"worked", "literal"}));
  app.add_flag("--full-scale", g.full_scale, "default T of 1e6 real, 1e4 complex");
  app.add_flag("--no-cache", g.no_cache, "do not read or write the count cache");

  uint64_t P = 0;
  auto* density = app.add_subcommand("density", "global density delta(Q,-k)");
  density->add_option("--P", P, "also print the Euler product truncated at P (>= 50)");
  auto* coefficient = app.add_subcommand("coefficient", "main coefficient C(Q,-k)");
  auto* count = app.add_subcommand("count", "count series N_t(Q,-k) as CSV");
  std::string counts_path;
  auto* fit = app.add_subcommand("fit", "power-law fit of Psi as JSON");
  fit->add_option("--counts", counts_path, "count CSV to fit instead of computing one");
  bool timing = false;
  auto* experiment = app.add_subcommand("experiment", "full pipeline report as JSON");
  experiment->add_flag("--timing", timing, "include wall-clock timing in the report");
  std::string family, range = "1..15";
  bool coefficients_only = false, report = false;
  auto* table = app.add_subcommand("table", "one CSV row per a for a table family");
  table->add_option("--family", family, "real-n2|real-n4|real-n6|real-n8|cx-n2|cx-n3|cx-n4|cx-n5")->required();
  table->add_option("--a-range", range, "LO..HI (default 1..15)");
  table->add_flag("--coefficients-only", coefficients_only, "skip counting; leave the experiment columns blank");
  table->add_flag("--report", report, "print the spectral summary to stderr");
  auto* plot = app.add_subcommand("plot-data", "envelope and reference curves as text columns");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*density) return cmd_density(g, P);
    if (*coefficient) return cmd_coefficient(g);
    if (*count) return cmd_count(g);
    if (*fit) return cmd_fit(g, counts_path);
    if (*experiment) return cmd_experiment(g, timing);
    if (*table) return cmd_table(g, family, range, coefficients_only, report);
    if (*plot) return cmd_plot_data(g);
  } catch (const ExperimentInvalid& e) {
    std::cerr << "experiment invalid: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
