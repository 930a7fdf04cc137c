#include <doctest.h>

#include <cmath>
#include <random>

#include "hlc/spectral.hpp"

using namespace hlc;

namespace {

double round2(double x) { return std::round(x * 100) / 100; }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("constants") {
    SpectralContext c = spectral_context(FieldKind::Real, 4);
    CHECK(c.upsilon == make_rational(-1, 2));
    CHECK(c.omega == make_rational(-3, 5));
    CHECK(c.rho == make_rational(3, 2));
    c = spectral_context(FieldKind::Complex, 5);
    CHECK(c.upsilon == -1);
    CHECK(c.omega == make_rational(-5, 3));
    CHECK(c.rho == 5);
    c = spectral_context(FieldKind::Real, 2);
    CHECK(c.upsilon == make_rational(-1, 3));
    CHECK(c.omega == make_rational(-1, 3));
    CHECK_THROWS(spectral_context(FieldKind::Real, 1));
    CHECK_THROWS(spectral_context(FieldKind::Complex, 0));
  }

  TEST_CASE("summary thresholds") {
    struct Row {
      FieldKind f;
      int n;
      double upsilon, omega;
    };
    const Row rows[] = {{FieldKind::Real, 2, -0.33, -0.33},   {FieldKind::Real, 4, -0.50, -0.60},
                        {FieldKind::Real, 6, -0.50, -0.71},   {FieldKind::Real, 8, -0.50, -0.78},
                        {FieldKind::Complex, 2, -1, -1.33},   {FieldKind::Complex, 3, -1, -1.50},
                        {FieldKind::Complex, 4, -1, -1.60},   {FieldKind::Complex, 5, -1, -1.67}};
    for (const Row& r : rows) {
      const SpectralContext c = spectral_context(r.f, r.n);
      INFO("n=" << r.n);
      CHECK(round2(c.upsilon.get_d()) == doctest::Approx(r.upsilon));
      CHECK(round2(c.omega.get_d()) == doctest::Approx(r.omega));
    }
  }

  TEST_CASE("verdict examples") {
    SpectralVerdict v = infer_lambda(-1.36, spectral_context(FieldKind::Complex, 5));
    REQUIRE(v.lambda_hat.has_value());
    CHECK(*v.lambda_hat == doctest::Approx(11.7504).epsilon(1e-12));
    CHECK(*v.nu_hat == doctest::Approx(3.64));
    CHECK(v.tau_hat == doctest::Approx(8.64));
    CHECK(v.classification == Classification::ExceptionalSpectrumEvidence);

    v = infer_lambda(-0.93, spectral_context(FieldKind::Real, 4));
    CHECK_FALSE(v.lambda_hat.has_value());
    CHECK_FALSE(v.nu_hat.has_value());
    CHECK(v.classification == Classification::LowerBoundEvidence);

    for (int n : {2, 3, 4, 5}) {
      const SpectralContext c = spectral_context(FieldKind::Complex, n);
      CHECK(infer_lambda(c.omega.get_d(), c).classification == Classification::Inconclusive);
      CHECK(infer_lambda(c.omega.get_d() + 0.049, c).classification == Classification::Inconclusive);
      CHECK(infer_lambda(c.omega.get_d() - 0.051, c).classification == Classification::LowerBoundEvidence);
      CHECK(infer_lambda(c.omega.get_d() + 0.01, c, 0.0).classification ==
            Classification::ExceptionalSpectrumEvidence);
    }
    CHECK_THROWS(infer_lambda(0.0, spectral_context(FieldKind::Real, 4)));
    CHECK_THROWS(infer_lambda(0.2, spectral_context(FieldKind::Real, 4)));
  }

  TEST_CASE("lambda round trip") {
    std::mt19937_64 rng(3);
    for (FieldKind f : {FieldKind::Real, FieldKind::Complex}) {
      for (int n = 2; n <= 8; ++n) {
        const SpectralContext c = spectral_context(f, n);
        const double rho = c.rho.get_d();
        const double top = c.omega_lambda.get_d();
        std::uniform_real_distribution<double> u(0.001 * top, 0.999 * top);
        for (int i = 0; i < 50; ++i) {
          const double lambda = u(rng);
          const double sigma = std::sqrt(rho * rho - lambda) + rho - 2 * rho;
          const SpectralVerdict v = infer_lambda(sigma, c);
          REQUIRE(v.lambda_hat.has_value());
          CHECK(std::abs(*v.lambda_hat - lambda) < 1e-10);
        }
        // Above the threshold the eigenvalue is not visible in the error term.
        const double lambda = 0.5 * (top + rho * rho);
        CHECK_FALSE(infer_lambda(std::sqrt(rho * rho - lambda) - rho, c).lambda_hat.has_value());
      }
    }
  }

  TEST_CASE("threshold coherence is exact") {
    for (FieldKind f : {FieldKind::Real, FieldKind::Complex}) {
      for (int n = 2; n <= 12; ++n) {
        const SpectralContext c = spectral_context(f, n);
        const Rational tau = 2 * c.rho + c.omega;
        CHECK(tau == c.tau_threshold());
        CHECK(lambda_from_tau(tau, c) == c.omega_lambda);
        CHECK(c.omega_lambda == make_rational(4 * n, (n + 1) * (n + 1)) * c.rho * c.rho);
      }
    }
  }

  TEST_CASE("conjecture report") {
    CHECK(conjecture_report({}).empty());
    CHECK(to_json(conjecture_report({})).empty());
    std::vector<KeyedVerdict> vs;
    const SpectralContext c2 = spectral_context(FieldKind::Complex, 2);
    const SpectralContext c5 = spectral_context(FieldKind::Complex, 5);
    for (int a = 1; a <= 3; ++a) {
      vs.push_back({FieldKind::Complex, 2, a, infer_lambda(-1.41 - 0.01 * a, c2)});
      vs.push_back({FieldKind::Complex, 5, a, infer_lambda(-1.37 + 0.01 * a, c5)});
    }
    const auto rows = conjecture_report(vs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].count == 3);
    CHECK(rows[0].conclusion.find("lower-bound") != std::string::npos);
    CHECK(rows[1].n == 5);
    CHECK(rows[1].sigma_min == doctest::Approx(-1.36));
    CHECK(rows[1].sigma_max == doctest::Approx(-1.34));
    CHECK(rows[1].conclusion.find("exceptional") != std::string::npos);
    REQUIRE(rows[1].lambda_min.has_value());
    CHECK(*rows[1].lambda_min == doctest::Approx(25 - 3.66 * 3.66));
    CHECK(*rows[1].lambda_max == doctest::Approx(25 - 3.64 * 3.64));
    const std::string text = format_report(rows);
    CHECK(text.find("-1.67") != std::string::npos);
    CHECK(text.find("-1.33") != std::string::npos);
    const nlohmann::json j = to_json(rows);
    CHECK(j.size() == 2);
    CHECK(j[0]["lambda"].is_null());
    CHECK(j[1]["lambda"].is_array());
    const nlohmann::json vj = to_json(vs[0].verdict);
    CHECK(vj["classification"] == "LowerBoundEvidence");
  }
}
