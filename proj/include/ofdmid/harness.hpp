/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/channel.hpp"
#include "ofdmid/detector.hpp"
#include "ofdmid/waveforms.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ofdmid {

/// Transmitted signal family. Noise is a unit-power complex Gaussian record
/// (n_symbols is then a sample count) used for false-alarm calibration.
enum class Modulation { Ofdm, ScPsk, ScFsk, ScQam, Noise };

std::string to_string(Modulation m);
Modulation parse_modulation(const std::string& text);

struct ExperimentConfig {
  Modulation modulation = Modulation::ScQam;
  int order = 32;
  int n_symbols = 1024;
  std::vector<double> snr_grid_db{-4, -2, 0, 2, 4, 6, 8, 10, 12, 15};
  // Optional extra sweep axes; an empty grid means the single value above
  // (order, n_symbols, detector.max_lag).
  std::vector<int> order_grid;
  std::vector<int> n_symbols_grid;
  std::vector<int> m_lags_grid;
  ChannelProfile channel;
  ImpairmentConfig impairments{.cfo_normalized = 1e-5}; // snr_db and seed are set per trial
  DetectorConfig detector{.significance = 0.1, .max_lag = 6};
  OfdmConfig ofdm; // shape template; order and n_symbols come from the sweep
  ScConfig sc;     // shape template; scheme, order and n_symbols come from the sweep
  int trials = 200;
  std::uint64_t master_seed = 1;
  int threads = 1; // 0 = hardware concurrency
};

void validate(const ExperimentConfig& cfg);

struct GridPoint {
  double snr_db = 0.0;
  int order = 0;
  int n_symbols = 0;
  int m_lags = 0;
};

/// Grid points in row order: order, then n_symbols, then m_lags, then SNR
/// (SNR varies fastest).
std::vector<GridPoint> grid_points(const ExperimentConfig& cfg);

/// Per-trial seed: SplitMix-chained hash of the master seed, every grid
/// coordinate (the SNR by its IEEE-754 bit pattern) and the trial index.
std::uint64_t trial_seed(std::uint64_t master_seed, const GridPoint& p, int trial_index);

/// Transmit record for one trial.
SampledSignal synthesize(const ExperimentConfig& cfg, const GridPoint& p, std::uint64_t seed);

/// One received record outside a sweep: transmit, then channel and noise.
struct SynthRequest {
  Modulation modulation = Modulation::Ofdm;
  int order = 16;
  int n_symbols = 1024;
  std::uint64_t seed = 1;
  OfdmConfig ofdm;
  ScConfig sc;
  ChannelProfile channel;
  ImpairmentConfig impairments; // default: no impairment, no noise
};

void validate(const SynthRequest& req);
SampledSignal synthesize(const SynthRequest& req);

GaussianityDecision run_trial(const ExperimentConfig& cfg, const GridPoint& p, int trial_index);

/// Trial at the configured order, n_symbols and max_lag.
GaussianityDecision run_trial(const ExperimentConfig& cfg, double snr_db, int trial_index);

struct PointOutcome {
  GridPoint point;
  std::vector<double> statistics; // one per trial, in trial order
  double threshold = 0.0;
  int rejections = 0;
};

PointOutcome run_point(const ExperimentConfig& cfg, const GridPoint& p);

struct SweepRow {
  double snr_db = 0.0;
  Modulation modulation = Modulation::ScQam;
  int order = 0;
  int n_symbols = 0;
  double alpha = 0.0;
  int m_lags = 0;
  int trials = 0;
  double p_reject = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(int k, int n, double z = 1.959963984540054);

SweepResult run_experiment(const ExperimentConfig& cfg);

/// Fixed-threshold comparison rule: SingleCarrier iff sum_l |c4(l,l,0)| > threshold.
Verdict baseline_sum_cumulant(std::span<const double> series, int max_lag, double threshold);

inline constexpr const char* kCsvHeader =
    "snr_db,modulation,order,n_symbols,alpha,m_lags,trials,p_reject,ci_lo,ci_hi";

/// Writes the ten-column CSV. With append = true an existing non-empty file
/// keeps its content and only the rows are added.
void emit_csv(const SweepResult& result, const std::filesystem::path& path, bool append = false);

SweepResult parse_csv(const std::filesystem::path& path);

} // namespace ofdmid
