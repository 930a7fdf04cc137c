#include <doctest.h>

#include <cmath>
#include <random>

#include "hlc/analysis.hpp"

using namespace hlc;

namespace {

std::vector<PsiPoint> series_of(const std::vector<double>& psi) {
  std::vector<PsiPoint> out;
  for (size_t i = 0; i < psi.size(); ++i) out.push_back({i + 1, psi[i]});
  return out;
}

// Independent envelope: keep t when psi(t) > max over all later points and > 0.
std::vector<PsiPoint> envelope_oracle(const std::vector<PsiPoint>& pts, uint64_t t_min) {
  std::vector<PsiPoint> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].t < t_min || !(pts[i].psi > 0)) continue;
    bool keep = true;
    for (size_t j = i + 1; j < pts.size(); ++j) keep = keep && pts[j].psi < pts[i].psi;
    if (keep) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("psi is the distance to the main term") {
    const FormSpec f = parse_form("1,1,1,1;1");
    const MainCoefficient mc = main_coefficient(f, 1);
    const CountSeries cs = count_series(f, 1, 10);
    const PsiSeries ps = psi_series(cs, mc);
    REQUIRE(ps.points.size() == 10);
    CHECK(ps.points.back().t == 10);
    CHECK(ps.points.back().psi == doctest::Approx(std::abs(6.098 - mc.numeric)).epsilon(1e-12));
    CHECK(ps.points.back().psi == doctest::Approx(1.098).epsilon(1e-3));
    const std::vector<u128> vals{0, 3, 20, 100};
    const PsiSeries direct = psi_series(vals, HighFloat(2), Rational(2));
    CHECK(direct.points[0].psi == doctest::Approx(1.0));
    CHECK(direct.points[1].psi == doctest::Approx(3.0));
    CHECK(direct.points[2].psi == doctest::Approx(100.0 / 9 - 2));
    CHECK_THROWS_AS(psi_series(vals, HighFloat(0), Rational(2)), ExperimentInvalid);
  }

  TEST_CASE("record envelope") {
    const auto env = envelope(series_of({5, 4, 4, 3, 1}), 1);
    const std::vector<PsiPoint> want{{1, 5}, {3, 4}, {4, 3}, {5, 1}};
    CHECK(env == want);
    CHECK(envelope(series_of({9, 8, 7, 6}), 1).size() == 4);
    const auto flat = envelope(series_of({2, 2, 2, 2}), 1);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].t == 4);
    CHECK_THROWS_AS(envelope(series_of({0, 0, 0}), 1), ExperimentInvalid);
    CHECK(envelope(series_of({5, 4, 4, 3, 1}), 3) == std::vector<PsiPoint>{{3, 4}, {4, 3}, {5, 1}});

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> v(1 + rng() % 60);
      for (double& x : v) x = (rng() % 5 == 0) ? std::floor(u(rng) * 4) : u(rng);
      const auto pts = series_of(v);
      const uint64_t t_min = 1 + rng() % v.size();
      const auto want_env = envelope_oracle(pts, t_min);
      if (want_env.empty()) {
        CHECK_THROWS_AS(envelope(pts, t_min), ExperimentInvalid);
      } else {
        CHECK(envelope(pts, t_min) == want_env);
      }
    }
  }

  TEST_CASE("power-law fit") {
    std::vector<std::pair<double, double>> xy;
    for (double t : {1.0, 2.0, 5.0, 10.0, 100.0}) xy.emplace_back(t, 2 / t);
    PowerLaw pl = power_law_fit(xy);
    CHECK(pl.sigma == doctest::Approx(-1).epsilon(1e-12));
    CHECK(pl.B == doctest::Approx(2).epsilon(1e-12));
    xy.clear();
    for (double t = 3; t < 1e6; t *= 1.7) xy.emplace_back(t, 13 * std::pow(t, -0.93));
    pl = power_law_fit(xy);
    CHECK(pl.sigma == doctest::Approx(-0.93).epsilon(1e-10));
    CHECK(pl.B == doctest::Approx(13).epsilon(1e-8));
    pl = power_law_fit({{10, 1}, {1000, 0.01}});
    CHECK(pl.sigma == doctest::Approx(-1));
    CHECK(pl.B == doctest::Approx(10));
    CHECK_THROWS(power_law_fit({{1, 1}}));
    CHECK_THROWS(power_law_fit({{1, 1}, {2, 0}}));
    CHECK_THROWS(power_law_fit({{3, 1}, {3, 2}}));
  }

  TEST_CASE("fit is invariant under scaling and shift of t") {
    std::vector<std::pair<double, double>> a, b;
    for (double t = 1; t < 1e5; t *= 1.3) {
      const double y = 4 * std::pow(t, -1.3) * (1 + 0.2 * std::sin(t));
      a.emplace_back(t, y);
      b.emplace_back(t, 5 * y);
    }
    const PowerLaw pa = power_law_fit(a), pb = power_law_fit(b);
    CHECK(pa.sigma == doctest::Approx(pb.sigma).epsilon(1e-12));
    CHECK(pb.B == doctest::Approx(5 * pa.B).epsilon(1e-10));
  }

  TEST_CASE("synthetic decay rates are recovered") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> noise(0.3, 1.0);
    for (double sigma0 : {-0.5, -0.93, -1.33, -2.0}) {
      PsiSeries ps;
      for (uint64_t t = 1; t <= 100000; ++t) ps.points.push_back({t, 3 * std::pow(double(t), sigma0) * noise(rng)});
      const FitResult fit = estimate_decay(ps, 100);
      INFO("sigma0=" << sigma0);
      CHECK(std::abs(fit.sigma - sigma0) < 0.05);
      CHECK(fit.envelope.front().t >= 100);
      CHECK(fit.point_count == fit.envelope.size());
      CHECK(estimate_decay(ps, 100).sigma == fit.sigma);
    }
  }

  TEST_CASE("fit window and defaults") {
    CHECK(default_t_min(100000) == 1000);
    CHECK(default_t_min(1000000) == 1000);
    CHECK(default_t_min(1000) == 100);
    CHECK(default_t_min(10000) == 100);
    CHECK(default_t_min(1) == 1);
    PsiSeries ps;
    for (uint64_t t = 1; t <= 10; ++t) ps.points.push_back({t, 1.0 / double(t)});
    CHECK_THROWS(estimate_decay(ps, 0));
    CHECK_THROWS(estimate_decay(ps, 10));
    PsiSeries rising;
    for (uint64_t t = 1; t <= 10; ++t) rising.points.push_back({t, double(t)});
    CHECK_THROWS_AS(estimate_decay(rising, 1), ExperimentInvalid);
    const FitResult fit = estimate_decay(ps, 2);
    const nlohmann::json j = to_json(fit);
    CHECK(j["window"][0] == 2);
    CHECK(j["window"][1] == 10);
    CHECK(j["envelope_size"] == 9);
    CHECK(j["sigma"].get<double>() == doctest::Approx(-1));
  }

  TEST_CASE("real I4 error decays near t^-1") {
    const FormSpec f = parse_form("1,1,1,1;1");
    const FitResult fit = estimate_decay(count_series(f, 1, 20000), main_coefficient(f, 1), 100);
    CHECK(fit.sigma < -0.85);
    CHECK(fit.sigma > -1.1);
  }
}
