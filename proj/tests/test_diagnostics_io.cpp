// Aggregation functionals, decay fits, CSV/JSON I/O, config validation and the CLI.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lohe/diagnostics.hpp"
#include "lohe/experiments/builtin_configs.hpp"
#include "lohe/experiments/config.hpp"
#include "lohe/experiments/runner.hpp"
#include "lohe/fit.hpp"
#include "lohe/timeseries.hpp"

namespace lohe {
namespace {

namespace fs = std::filesystem;
using experiments::json;

TEST(Diagnostics, DiameterAndOrderParameterByHand) {
  const std::vector<CVector> x = {{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}, {cplx(-1, 0), cplx(0, 0)}};
  EXPECT_NEAR(ensemble_diameter(views(x)), 2.0, 1e-15);
  // centroid (0, 1/3)
  EXPECT_NEAR(order_parameter_rho(views(x)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(variance_from_centroid(views(x)), 1.0 - 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(variance_functional(views(x)), variance_from_centroid(views(x)), 1e-15);
}

TEST(Diagnostics, CorrelationConventions) {
  const std::vector<CVector> x = {{cplx(0, 1)}, {cplx(1, 0)}};
  const CMatrix first = correlation_matrix(views(x), 1.0, Conjugate::First);
  const CMatrix second = correlation_matrix(views(x), 1.0, Conjugate::Second);
  EXPECT_NEAR(std::abs(first(0, 1) - cplx(0, -1)), 0.0, 1e-15);   // conj(i) * 1
  EXPECT_NEAR(std::abs(second(0, 1) - cplx(0, 1)), 0.0, 1e-15);   // i * conj(1)
}

TEST(Diagnostics, CrossRatioByHand) {
  CMatrix h = CMatrix::Identity(4, 4);
  h(0, 1) = 0.5;
  h(2, 3) = cplx(0.0, 0.5);
  h(0, 3) = 0.25;
  h(2, 1) = -1.0;
  // (1 - h01)(1 - h23) / ((1 - h03)(1 - h21))
  const cplx expect = (0.5 * cplx(1.0, -0.5)) / (0.75 * 2.0);
  const CrossRatio r = cross_ratio(h, 0, 1, 2, 3);
  ASSERT_TRUE(r.defined);
  EXPECT_NEAR(std::abs(r.value - expect), 0.0, 1e-15);
  h(0, 3) = 1.0;
  EXPECT_FALSE(cross_ratio(h, 0, 1, 2, 3).defined);
}

TEST(Diagnostics, UnitaryPairFunctional) {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  const AggregationL l = aggregation_L({i2, i2}, {i2, -i2});
  EXPECT_NEAR(l.diameter_u, 0.0, 1e-15);
  EXPECT_NEAR(l.diameter_v, 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(l.spread_u, 0.0, 1e-15);
  EXPECT_NEAR(l.spread_v, 4.0, 1e-15);  // |2 - <I,-I>| = 4
  EXPECT_NEAR(unitarity_defect({i2, 2.0 * i2}), std::sqrt(18.0), 1e-14);
}

TEST(Fit, RecoversSyntheticExponential) {
  std::vector<double> t, v;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    v.push_back(3.0 * std::exp(-2.0 * t.back()));
  }
  const DecayFit f = fit_decay_rate(t, v, FitWindow{1e-8, 1.0});
  EXPECT_NEAR(f.rate, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_THROW(fit_decay_rate(t, v, FitWindow{1e-30, 1e-29}), std::invalid_argument);
}

TEST(TimeSeries, CsvRoundTrip) {
  TimeSeries ts;
  ts.add_channel("a");
  ts.push(0.0, {{"a", 1.0 / 3.0}, {"b", -2.5e-300}});
  ts.push(0.5, {{"a", std::nan("")}});
  const fs::path p = fs::temp_directory_path() / "lohe_ts_roundtrip.csv";
  ts.write_csv(p.string());
  std::ifstream is(p);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "time,a,b\r");
  const TimeSeries back = TimeSeries::read_csv(p.string());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.channel("a")[0], 1.0 / 3.0);
  EXPECT_EQ(back.channel("b")[0], -2.5e-300);
  EXPECT_TRUE(std::isnan(back.channel("b")[1]));
  EXPECT_THROW(ts.add_channel("late"), std::logic_error);
}

TEST(Config, AllBuiltinsValidate) {
  for (const auto& name : experiments::builtin_config_names())
    EXPECT_NO_THROW(experiments::parse_config(experiments::builtin_config(name))) << name;
}

// The shipped configs/ directory is the JSON export of the builtin table.
TEST(Config, ShippedConfigsMatchBuiltins) {
  const fs::path dir = LOHE_CONFIG_DIR;
  for (const auto& name : experiments::builtin_config_names()) {
    const fs::path p = dir / (name + ".json");
    ASSERT_TRUE(fs::exists(p)) << p;
    std::ifstream is(p);
    EXPECT_EQ(json::parse(is), experiments::builtin_config(name)) << name;
  }
}

TEST(Config, DiagnosticsNameThePath) {
  json doc = experiments::builtin_config("gpl1d_identical_k20");
  doc["scheme"]["dt"] = -1.0;
  doc["grid"]["M"] = 7;
  doc["bogus"] = 1;
  try {
    experiments::parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const experiments::ConfigError& e) {
    const std::string all = e.what();
    EXPECT_NE(all.find("scheme.dt"), std::string::npos) << all;
    EXPECT_NE(all.find("grid.M"), std::string::npos) << all;
    EXPECT_NE(all.find("bogus: unknown key"), std::string::npos) << all;
    EXPECT_GE(e.diagnostics().size(), 3u);
  }
  EXPECT_THROW(experiments::parse_config_text("{not json"), experiments::ConfigError);
  EXPECT_THROW(experiments::builtin_config("no_such_config"), experiments::ConfigError);
}

TEST(Runner, WritesCsvManifestAndSnapshots) {
  json doc = experiments::builtin_config("gpl2d_hexagon");
  doc["grid"]["M"] = 32;
  doc["scheme"] = {{"dt", 1e-3}, {"t_end", 0.01}, {"sample_every", 5}};
  doc["snapshots"] = {{"times", {0.0, 0.01}}, {"components", {2}}};
  const fs::path out = fs::temp_directory_path() / "lohe_runner_test";
  fs::remove_all(out);
  experiments::RunOptions opt;
  opt.out_dir = out.string();
  const auto r = experiments::run_experiment(experiments::parse_config(doc), opt);
  ASSERT_FALSE(r.diverged);
  EXPECT_EQ(r.series.size(), 3u);
  const TimeSeries back = TimeSeries::read_csv(r.csv_path);
  EXPECT_EQ(back.names(), r.series.names());
  std::ifstream ms(r.manifest_path);
  const json m = json::parse(ms);
  EXPECT_EQ(m["status"], "ok");
  EXPECT_EQ(m["samples"], 3);
  ASSERT_EQ(r.snapshot_paths.size(), 2u);
  std::ifstream snap(out / r.snapshot_paths[1]);
  std::string line;
  std::getline(snap, line);
  EXPECT_EQ(line, "d,M,a,b,t,component\r");
  std::getline(snap, line);
  EXPECT_EQ(line.substr(0, 7), "2,32,-1");
  std::size_t rows = 0;
  while (std::getline(snap, line)) ++rows;
  EXPECT_EQ(rows, 32u);
}

TEST(Runner, OdeRunSamplesOnCadence) {
  json doc = experiments::builtin_config("lt_norm_conservation");
  doc["integrator"]["t_end"] = 0.1;
  doc["integrator"]["sample_every"] = 30;
  experiments::RunOptions opt;
  opt.write_files = false;
  const auto r = experiments::run_experiment(experiments::parse_config(doc), opt);
  // steps 0, 30, 60, 90 and the final step 100
  EXPECT_EQ(r.series.times().size(), 5u);
  EXPECT_NEAR(r.series.times().back(), 0.1, 1e-15);
}

int cli(const std::string& args) {
  const std::string cmd = std::string(LOHE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path in = fs::temp_directory_path() / "lohe_cli_test" / "in";
  const fs::path out = fs::temp_directory_path() / "lohe_cli_test" / "out";
  fs::create_directories(in);
  auto run = [&](const std::string& file) { return cli("run " + (in / file).string() + " --out " + out.string()); };
  EXPECT_EQ(cli("list-suites"), 0);
  EXPECT_EQ(cli("check no-such-suite"), 1);
  std::ofstream(in / "bad.json") << R"({"model": "lt", "N": 0})";
  EXPECT_EQ(run("bad.json"), 1);
  json doc = experiments::builtin_config("lt_norm_conservation");
  doc["integrator"]["t_end"] = 0.01;
  std::ofstream(in / "ok.json") << doc.dump();
  EXPECT_EQ(run("ok.json"), 0);
  EXPECT_TRUE(fs::exists(out / "lt_norm_conservation.csv"));
  // RK4 far outside its stability region blows up; partial output is kept.
  doc["coupling"]["kappa0"] = 50.0;
  doc["integrator"]["dt"] = 1.0;
  doc["integrator"]["t_end"] = 200.0;
  doc["output"] = "unstable";
  std::ofstream(in / "unstable.json") << doc.dump();
  EXPECT_EQ(run("unstable.json"), 2);
  EXPECT_TRUE(fs::exists(out / "unstable.csv"));
  std::ifstream ms(out / "unstable.json");
  EXPECT_EQ(json::parse(ms)["status"], "diverged");
}

}  // namespace
}  // namespace lohe
