/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "doctest.h"

#include "ofdmid/error.hpp"
#include "ofdmid/harness.hpp"
#include "ofdmid/rng.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace ofdmid;
namespace fs = std::filesystem;

namespace {

ExperimentConfig noise_config()
{
  ExperimentConfig cfg;
  cfg.modulation = Modulation::Noise;
  cfg.n_symbols = 2048;
  cfg.snr_grid_db = {0.0, 10.0};
  cfg.trials = 6;
  cfg.master_seed = 42;
  return cfg;
}

fs::path temp_file(const std::string& name)
{
  return fs::temp_directory_path() / ("ofdmid_unit_" + name);
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("modulation names")
{
  for (auto m : {Modulation::Ofdm, Modulation::ScPsk, Modulation::ScFsk, Modulation::ScQam,
                 Modulation::Noise})
    CHECK(parse_modulation(to_string(m)) == m);
  CHECK(to_string(Modulation::ScQam) == "SC-QAM");
  CHECK_THROWS_AS(parse_modulation("SC-ASK"), ConfigError);
}

TEST_CASE("experiment configuration checks")
{
  auto cfg = noise_config();
  CHECK_NOTHROW(validate(cfg));
  cfg.trials = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = noise_config();
  cfg.snr_grid_db.clear();
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = noise_config();
  cfg.modulation = Modulation::ScQam;
  cfg.order = 24;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = noise_config();
  cfg.m_lags_grid = {2, -1};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("grid order")
{
  auto cfg = noise_config();
  cfg.modulation = Modulation::ScPsk;
  cfg.order_grid = {4, 8};
  cfg.m_lags_grid = {2, 6};
  const auto pts = grid_points(cfg);
  REQUIRE(pts.size() == 8);
  CHECK(pts[0].order == 4);
  CHECK(pts[0].m_lags == 2);
  CHECK(pts[0].snr_db == 0.0);
  CHECK(pts[1].snr_db == 10.0);
  CHECK(pts[2].m_lags == 6);
  CHECK(pts[4].order == 8);
}

TEST_CASE("trial seeds are pairwise distinct")
{
  auto cfg = noise_config();
  cfg.snr_grid_db = {-4, -2, 0, 2, 4, 6, 8, 10, 12, 15};
  cfg.order_grid = {2, 4, 8, 16, 32, 64, 128, 256};
  cfg.m_lags_grid = {2, 4, 6, 8, 10};
  std::set<std::uint64_t> seen;
  std::size_t count = 0;
  for (const auto& p : grid_points(cfg))
    for (int t = 0; t < 200; ++t) {
      seen.insert(trial_seed(cfg.master_seed, p, t));
      ++count;
    }
  CHECK(seen.size() == count);
}

TEST_CASE("trials are reproducible")
{
  auto cfg = noise_config();
  cfg.modulation = Modulation::ScQam;
  cfg.n_symbols = 256;
  cfg.channel = rayleigh_profile();
  const auto a = run_trial(cfg, 5.0, 3);
  const auto b = run_trial(cfg, 5.0, 3);
  CHECK(to_record_line(a) == to_record_line(b));
  CHECK(a.cumulants.values == b.cumulants.values);
  CHECK(run_trial(cfg, 5.0, 4).statistic != a.statistic);
}

TEST_CASE("single trial gives a zero or one rate")
{
  auto cfg = noise_config();
  cfg.trials = 1;
  for (const auto& r : run_experiment(cfg).rows) {
    CHECK((r.p_reject == 0.0 || r.p_reject == 1.0));
    CHECK(r.trials == 1);
  }
}

TEST_CASE("results do not depend on the worker count")
{
  auto cfg = noise_config();
  cfg.threads = 1;
  const auto one = run_experiment(cfg);
  cfg.threads = 3;
  const auto three = run_experiment(cfg);
  CHECK(one.rows == three.rows);
  REQUIRE(one.rows.size() == 2);
  CHECK(one.rows[0].alpha == 0.1);
  CHECK(one.rows[0].m_lags == 6);
  CHECK(one.rows[0].modulation == Modulation::Noise);
}

TEST_CASE("run_point keeps per-trial statistics")
{
  auto cfg = noise_config();
  const auto pts = grid_points(cfg);
  const auto out = run_point(cfg, pts[0]);
  REQUIRE(out.statistics.size() == 6);
  int k = 0;
  for (double s : out.statistics)
    k += s > out.threshold;
  CHECK(k == out.rejections);
  CHECK(out.statistics[2] == run_trial(cfg, pts[0], 2).statistic);
}

TEST_CASE("FSK at 7 dB is flagged as single carrier")
{
  ExperimentConfig cfg;
  cfg.modulation = Modulation::ScFsk;
  cfg.order = 32;
  cfg.n_symbols = 1024;
  cfg.snr_grid_db = {7.0};
  cfg.trials = 20;
  const auto r = run_experiment(cfg).rows.at(0);
  CHECK(r.p_reject >= 0.9);
}

TEST_CASE("Wilson interval")
{
  const auto [lo0, hi0] = wilson_interval(0, 10);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(0.27753).epsilon(1e-4));
  const auto [lo5, hi5] = wilson_interval(5, 10);
  CHECK(lo5 == doctest::Approx(0.23659).epsilon(1e-4));
  CHECK(hi5 == doctest::Approx(0.76341).epsilon(1e-4));
  const auto [lon, hin] = wilson_interval(10, 10);
  CHECK(hin == 1.0);
  CHECK(lon == doctest::Approx(1.0 - 0.27753).epsilon(1e-4));
}

TEST_CASE("fixed-threshold baseline")
{
  CHECK(baseline_sum_cumulant(std::vector<double>(100, 0.0), 4, 0.5) == Verdict::MultiCarrierOfdm);
  Rng rng(1);
  std::vector<double> b(1000);
  for (double& v : b)
    v = rng.below(2) ? 1.0 : -1.0;
  CHECK(baseline_sum_cumulant(b, 0, 1.0) == Verdict::SingleCarrier);
  CHECK_THROWS_AS(baseline_sum_cumulant(b, 0, 0.0), ConfigError);
}

TEST_CASE("CSV output")
{
  const auto path = temp_file("empty.csv");
  emit_csv(SweepResult{}, path);
  CHECK(slurp(path) == std::string(kCsvHeader) + "\n");
  CHECK(parse_csv(path).rows.empty());

  auto cfg = noise_config();
  const auto res = run_experiment(cfg);
  const auto full = temp_file("rows.csv");
  emit_csv(res, full);
  std::ifstream in(full);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(lines == 3);
  CHECK(parse_csv(full).rows == res.rows);

  emit_csv(res, full, true);
  const auto twice = parse_csv(full);
  REQUIRE(twice.rows.size() == 4);
  CHECK(twice.rows[2] == res.rows[0]);

  // Appending to a missing file writes the header.
  const auto fresh = temp_file("fresh.csv");
  fs::remove(fresh);
  emit_csv(res, fresh, true);
  CHECK(parse_csv(fresh).rows == res.rows);

  CHECK_THROWS_AS(emit_csv(res, "/nonexistent-dir/x.csv"), IoError);
  CHECK_THROWS_AS(parse_csv("/nonexistent-dir/x.csv"), IoError);

  const auto bad = temp_file("bad.csv");
  std::ofstream(bad) << kCsvHeader << "\n1,SC-QAM,32\n";
  CHECK_THROWS(parse_csv(bad));

  fs::remove(path);
  fs::remove(full);
  fs::remove(fresh);
  fs::remove(bad);
}

TEST_CASE("single record synthesis")
{
  SynthRequest req;
  req.modulation = Modulation::ScPsk;
  req.order = 4;
  req.n_symbols = 128;
  req.seed = 9;
  const auto clean = synthesize(req);
  CHECK(clean.samples.size() == 128 * 4 + 32);
  CHECK(mean_power(clean.samples) == doctest::Approx(1.0).epsilon(1e-12));
  req.impairments.snr_db = 0.0;
  const auto noisy = synthesize(req);
  CHECK(mean_power(noisy.samples) == doctest::Approx(2.0).epsilon(0.2));
  CHECK(synthesize(req).samples == noisy.samples);
  req.order = 5;
  CHECK_THROWS_AS(validate(req), ConfigError);
}
