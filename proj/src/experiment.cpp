#include "hlc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "hlc/count_cache.hpp"

namespace hlc {

uint64_t default_T(const FieldSpec& field, bool full_scale) {
  if (field.is_complex()) return full_scale ? 10'000 : 1'000;
  return full_scale ? 1'000'000 : 100'000;
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  c.form.validate();
  if (c.k < 1) throw std::invalid_argument("k must be >= 1");
  if (c.T == 0) c.T = default_T(c.form.field, false);
  if (c.t_min == 0) c.t_min = default_t_min(c.T);
  if (c.t_min < 1 || c.t_min >= c.T) throw std::invalid_argument("need T > t_min >= 1");
  if (c.cache_dir.empty()) c.cache_dir = default_cache_dir();
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.config = config.resolved();
  const ExperimentConfig& c = r.config;
  r.coefficient = main_coefficient(c.form, c.k, c.rule);
  if (r.coefficient.is_zero())
    throw ExperimentInvalid("C(Q,-" + std::to_string(c.k) + ") = 0 for " + serialize_form(c.form) +
                            ": -k is not represented, the experiment is undefined");
  CountOptions opt;
  opt.provider = c.provider;
  opt.threads = c.threads;
  CountSeries counts;
  if (c.cache) {
    CachedCount cc = load_or_compute(c.cache_dir, c.form, c.k, c.T, opt);
    counts = std::move(cc.series);
    r.from_cache = cc.from_cache;
    r.cache_warning = std::move(cc.warning);
  } else {
    counts = count_series(c.form, c.k, c.T, opt);
  }
  const PsiSeries psi = psi_series(counts, r.coefficient);
  r.n_T = counts.values.back();
  r.psi_T = psi.points.back().psi;
  r.fit = estimate_decay(psi, c.t_min);
  r.verdict = infer_lambda(r.fit.sigma, spectral_context(c.form.field.kind, c.form.n()), c.margin);
  r.psi = psi.points;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string coefficient_text(const MainCoefficient& mc) {
  if (mc.exact) return mc.c.pretty();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", mc.numeric);
  return std::string("~") + buf;
}

nlohmann::json to_json(const ExperimentReport& r, bool include_timing) {
  const ExperimentConfig& c = r.config;
  const MainCoefficient& mc = r.coefficient;
  nlohmann::json bad = nlohmann::json::array();
  for (const auto& lp : mc.delta.bad_primes)
    bad.push_back({{"p", lp.p},
                   {"delta_p", to_string(lp.value)},
                   {"method", lp.method == DensityMethod::ClosedFormGood ? "closed_form" : "residue_count"},
                   {"stable", lp.stable}});
  nlohmann::json j{
      {"config",
       {{"form", serialize_form(c.form)},
        {"k", c.k},
        {"T", c.T},
        {"t_min", c.t_min},
        {"provider", provider_name(c.provider)},
        {"threads", c.threads},
        {"compat_mode", c.rule == DiscriminantRule::WorkedExample ? "worked" : "literal"}}},
      {"coefficient",
       {{"exact", mc.exact ? nlohmann::json(mc.c.serialize()) : nlohmann::json(nullptr)},
        {"pretty", coefficient_text(mc)},
        {"numeric", mc.numeric},
        {"c_prime", mc.c_prime.serialize()},
        {"two_rho", to_string(mc.two_rho)}}},
      {"density",
       {{"exact", mc.delta.symbolic ? nlohmann::json(mc.delta.value.serialize()) : nlohmann::json(nullptr)},
        {"numeric", mc.delta.numeric.convert_to<double>()},
        {"series_part", mc.delta.series_part},
        {"bad_primes", bad}}},
      {"N_T", to_string(r.n_T)},
      {"psi_T", r.psi_T},
      {"fit", to_json(r.fit)},
      {"verdict", to_json(r.verdict)}};
  if (include_timing) j["timing"] = {{"seconds", r.seconds}, {"from_cache", r.from_cache}};
  return j;
}

void write_plot_data(std::ostream& out, const ExperimentReport& r) {
  const auto& env = r.fit.envelope;
  const SpectralContext ctx = spectral_context(r.config.form.field.kind, r.config.form.n());
  const double sigma = r.fit.sigma, omega = ctx.omega.get_d(), upsilon = ctx.upsilon.get_d();
  char buf[160];
  std::snprintf(buf, sizeof buf, "# t psi t^%.4f t^%.4f t^%.4f\n", sigma, omega, upsilon);
  out << buf;
  if (env.empty()) return;
  const double t0 = static_cast<double>(env.front().t), y0 = env.front().psi;
  for (const auto& p : env) {
    const double x = static_cast<double>(p.t) / t0;
    std::snprintf(buf, sizeof buf, "%llu %.10e %.10e %.10e %.10e\n", static_cast<unsigned long long>(p.t), p.psi,
                  y0 * std::pow(x, sigma), y0 * std::pow(x, omega), y0 * std::pow(x, upsilon));
    out << buf;
  }
}

TableFamily parse_table_family(const std::string& name) {
  const auto fail = [&] {
    return std::invalid_argument("unknown table family '" + name +
                                 "' (expected real-n2|real-n4|real-n6|real-n8|cx-n2|cx-n3|cx-n4|cx-n5)");
  };
  TableFamily f{};
  std::string rest;
  if (name.rfind("real-n", 0) == 0) {
    f.field = FieldKind::Real;
    rest = name.substr(6);
  } else if (name.rfind("cx-n", 0) == 0) {
    f.field = FieldKind::Complex;
    rest = name.substr(4);
  } else {
    throw fail();
  }
  if (rest.size() != 1 || rest[0] < '2' || rest[0] > '8') throw fail();
  f.n = rest[0] - '0';
  const bool ok = f.field == FieldKind::Real ? (f.n % 2 == 0) : (f.n <= 5);
  if (!ok) throw fail();
  return f;
}

TableRun write_table(std::ostream& out, const TableConfig& cfg) {
  const FieldSpec field =
      cfg.family.field == FieldKind::Real ? FieldSpec::real() : FieldSpec::complex(cfg.disc);
  TableRun run;
  out << kTableHeader << "\n";
  for (int64_t a = cfg.a_lo; a <= cfg.a_hi; ++a) {
    const FormSpec form = identity_form(cfg.family.n, a, field);
    const MainCoefficient mc = main_coefficient(form, cfg.k, cfg.rule);
    char num[64];
    std::snprintf(num, sizeof num, "%.12g", mc.numeric);
    out << a << ",\"" << coefficient_text(mc) << "\"," << num;
    if (mc.is_zero() || cfg.coefficients_only) {
      out << ",,,,,,\n";
      continue;
    }
    ExperimentConfig ec;
    ec.form = form;
    ec.k = cfg.k;
    ec.T = cfg.T;
    ec.t_min = cfg.t_min;
    ec.provider = cfg.provider;
    ec.threads = cfg.threads;
    ec.cache = cfg.cache;
    ec.cache_dir = cfg.cache_dir;
    ec.rule = cfg.rule;
    const ExperimentReport r = run_experiment(ec);
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%s,%.6e,%.6f,%.6g,%s,", to_string(r.n_T).c_str(), r.psi_T, r.fit.sigma,
                  r.fit.B, classification_name(r.verdict.classification));
    out << buf;
    if (r.verdict.lambda_hat) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.verdict.lambda_hat);
      out << buf;
    }
    out << "\n";
    out.flush();
    run.verdicts.push_back({field.kind, cfg.family.n, a, r.verdict});
  }
  return run;
}

}  // namespace hlc
