#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hlc/experiment.hpp"
#include "table_values.hpp"

using namespace hlc;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double table_value(const test::TableEntry& e) {
  long num = 0, den = 1;
  std::sscanf(e.q, "%ld/%ld", &num, &den);
  return double(num) / double(den) * std::sqrt(double(e.s));
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hlc-experiment-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("config defaults and validation") {
    CHECK(default_T(FieldSpec::real(), false) == 100000);
    CHECK(default_T(FieldSpec::real(), true) == 1000000);
    CHECK(default_T(FieldSpec::complex(-3), false) == 1000);
    CHECK(default_T(FieldSpec::complex(-3), true) == 10000);
    ExperimentConfig c;
    c.form = parse_form("1,1,1,1;1");
    const ExperimentConfig r = c.resolved();
    CHECK(r.T == 100000);
    CHECK(r.t_min == 1000);
    c.T = 50;
    c.t_min = 50;
    CHECK_THROWS(c.resolved());
    c.t_min = 10;
    c.k = 0;
    CHECK_THROWS(c.resolved());
  }

  TEST_CASE("unrepresented -k makes the experiment invalid") {
    ExperimentConfig c;
    c.form = parse_form("1,1;4");
    c.T = 100;
    c.cache = false;
    CHECK_THROWS_AS(run_experiment(c), ExperimentInvalid);
    c.form = parse_form("1,1;12");
    CHECK_THROWS_AS(run_experiment(c), ExperimentInvalid);
  }

  TEST_CASE("reports are reproducible through the cache") {
    ExperimentConfig c;
    c.form = parse_form("1,1,1,1;3");
    c.T = 3000;
    c.cache_dir = scratch("repro");
    const ExperimentReport first = run_experiment(c);
    const ExperimentReport second = run_experiment(c);
    CHECK_FALSE(first.from_cache);
    CHECK(second.from_cache);
    CHECK(to_json(first, false).dump(2) == to_json(second, false).dump(2));
    const nlohmann::json j = to_json(first);
    CHECK(j.contains("timing"));
    CHECK_FALSE(to_json(first, false).contains("timing"));
    CHECK(j["config"]["T"] == 3000);
    CHECK(j["config"]["t_min"] == 100);
    CHECK(j["coefficient"]["pretty"] == "12 * sqrt(3)");
    CHECK(j["N_T"] == to_string(first.n_T));
    CHECK(j["fit"]["sigma"].get<double>() < 0);
    CHECK(j["verdict"]["classification"] == "LowerBoundEvidence");
    CHECK(first.psi.size() == 3000);
    CHECK(first.psi_T == first.psi.back().psi);
    c.cache = false;
    CHECK(to_json(run_experiment(c), false) == to_json(first, false));
    fs::remove_all(c.cache_dir);
  }

  TEST_CASE("plot data") {
    ExperimentConfig c;
    c.form = parse_form("1,1;1@C:-3");
    c.T = 400;
    c.t_min = 10;
    c.cache = false;
    const ExperimentReport r = run_experiment(c);
    std::ostringstream out;
    write_plot_data(out, r);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == r.fit.envelope.size() + 1);
    CHECK(lines[0].rfind("# t psi", 0) == 0);
    CHECK(lines[0].find("t^-1.3333") != std::string::npos);
    CHECK(lines[0].find("t^-1.0000") != std::string::npos);
    uint64_t prev = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
      std::istringstream in(lines[i]);
      uint64_t t;
      double psi, f, o, u;
      REQUIRE(static_cast<bool>(in >> t >> psi >> f >> o >> u));
      CHECK(t > prev);
      CHECK(t >= 10);
      prev = t;
      if (i == 1) {
        CHECK(f == doctest::Approx(psi));
        CHECK(o == doctest::Approx(psi));
        CHECK(u == doctest::Approx(psi));
      }
    }
  }

  TEST_CASE("coefficient table for real n = 4") {
    TableConfig cfg;
    cfg.family = parse_table_family("real-n4");
    cfg.coefficients_only = true;
    std::ostringstream out;
    const TableRun run = write_table(out, cfg);
    CHECK(run.verdicts.empty());
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 16);
    CHECK(lines[0] == kTableHeader);
    for (int a = 1; a <= 15; ++a) {
      const auto cols = split(lines[a], ',');
      REQUIRE(cols.size() == 9);
      CHECK(std::stoi(cols[0]) == a);
      CHECK(std::stod(cols[2]) == doctest::Approx(table_value(test::kTables[1].rows[a - 1])).epsilon(1e-10));
      for (int i = 3; i < 9; ++i) CHECK(cols[i].empty());
    }
    CHECK(lines[1] == "1,\"5\",5,,,,,,");
  }

  TEST_CASE("empty range and bad families") {
    TableConfig cfg;
    cfg.family = parse_table_family("cx-n5");
    cfg.a_lo = 5;
    cfg.a_hi = 4;
    std::ostringstream out;
    write_table(out, cfg);
    CHECK(out.str() == std::string(kTableHeader) + "\n");
    CHECK_THROWS(parse_table_family("real-n3"));
    CHECK_THROWS(parse_table_family("cx-n6"));
    CHECK_THROWS(parse_table_family("quaternion-n2"));
  }

  TEST_CASE("small complex table with experiments") {
    TableConfig cfg;
    cfg.family = parse_table_family("cx-n2");
    cfg.a_hi = 3;
    cfg.T = 300;
    cfg.t_min = 10;
    cfg.cache = false;
    std::ostringstream out;
    const TableRun run = write_table(out, cfg);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    REQUIRE(run.verdicts.size() == 3);
    for (int a = 1; a <= 3; ++a) {
      const auto cols = split(lines[a], ',');
      REQUIRE(cols.size() == 9);
      CHECK(std::stod(cols[2]) == doctest::Approx(table_value(test::kTables[4].rows[a - 1])));
      CHECK_FALSE(cols[3].empty());
      CHECK(std::stod(cols[5]) < 0);
      CHECK(cols[7] == classification_name(run.verdicts[a - 1].verdict.classification));
    }
    CHECK(lines[1].rfind("1,\"18\",18,", 0) == 0);
  }

  TEST_CASE("zero coefficients leave experiment columns blank") {
    TableConfig cfg;
    cfg.family = parse_table_family("real-n2");
    cfg.a_lo = 4;
    cfg.a_hi = 4;
    cfg.T = 100;
    cfg.cache = false;
    std::ostringstream out;
    const TableRun run = write_table(out, cfg);
    CHECK(run.verdicts.empty());
    CHECK(lines_of(out.str())[1] == "4,\"0\",0,,,,,,");
  }
}
