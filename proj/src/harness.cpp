/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/harness.hpp"

#include "ofdmid/chi2.hpp"
#include "ofdmid/error.hpp"
#include "ofdmid/rng.hpp"
#include "text.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace ofdmid {
namespace {

enum TrialStream : std::uint64_t { kWaveformStream = 10, kChannelStream = 11 };

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index writes
// only its own output slot, so results do not depend on scheduling.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn)
{
  if (threads == 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
}

std::string csv_line(const SweepRow& r)
{
  using detail::format_double;
  std::string s;
  s += format_double(r.snr_db) + ',' + to_string(r.modulation) + ',' + std::to_string(r.order) +
       ',' + std::to_string(r.n_symbols) + ',' + format_double(r.alpha) + ',' +
       std::to_string(r.m_lags) + ',' + std::to_string(r.trials) + ',' +
       format_double(r.p_reject) + ',' + format_double(r.ci_lo) + ',' + format_double(r.ci_hi);
  return s;
}

} // namespace

std::string to_string(Modulation m)
{
  switch (m) {
  case Modulation::Ofdm: return "OFDM";
  case Modulation::ScPsk: return "SC-PSK";
  case Modulation::ScFsk: return "SC-FSK";
  case Modulation::ScQam: return "SC-QAM";
  case Modulation::Noise: return "NOISE";
  }
  return "?";
}

Modulation parse_modulation(const std::string& text)
{
  if (text == "OFDM") return Modulation::Ofdm;
  if (text == "SC-PSK") return Modulation::ScPsk;
  if (text == "SC-FSK") return Modulation::ScFsk;
  if (text == "SC-QAM") return Modulation::ScQam;
  if (text == "NOISE") return Modulation::Noise;
  throw ConfigError("unknown modulation '" + text +
                    "' (expected OFDM, SC-PSK, SC-FSK, SC-QAM or NOISE)");
}

void validate(const ExperimentConfig& cfg)
{
  if (cfg.trials < 1)
    throw ConfigError("trials must be >= 1");
  if (cfg.snr_grid_db.empty())
    throw ConfigError("snr_grid_db must not be empty");
  for (double s : cfg.snr_grid_db)
    if (std::isnan(s))
      throw ConfigError("snr_grid_db contains NaN");
  if (cfg.threads < 0)
    throw ConfigError("threads must be >= 0");
  validate(cfg.channel);
  validate(cfg.impairments);
  validate(cfg.detector);
  for (const auto& p : grid_points(cfg)) {
    if (p.n_symbols < 1)
      throw ConfigError("n_symbols must be >= 1");
    if (p.m_lags < 0)
      throw ConfigError("m_lags must be >= 0");
    switch (cfg.modulation) {
    case Modulation::Ofdm: {
      auto o = cfg.ofdm;
      o.modulation_order = p.order;
      o.n_symbols = p.n_symbols;
      validate(o);
      break;
    }
    case Modulation::Noise:
      break;
    default: {
      auto s = cfg.sc;
      s.modulation_order = p.order;
      s.n_symbols = p.n_symbols;
      validate(s);
    }
    }
  }
}

std::vector<GridPoint> grid_points(const ExperimentConfig& cfg)
{
  const std::vector<int> orders = cfg.order_grid.empty() ? std::vector<int>{cfg.order}
                                                         : cfg.order_grid;
  const std::vector<int> sizes = cfg.n_symbols_grid.empty()
                                     ? std::vector<int>{cfg.n_symbols}
                                     : cfg.n_symbols_grid;
  const std::vector<int> lags = cfg.m_lags_grid.empty()
                                    ? std::vector<int>{cfg.detector.max_lag}
                                    : cfg.m_lags_grid;
  std::vector<GridPoint> out;
  for (int o : orders)
    for (int n : sizes)
      for (int m : lags)
        for (double s : cfg.snr_grid_db)
          out.push_back({s, o, n, m});
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, const GridPoint& p, int trial_index)
{
  std::uint64_t s = derive_seed(master_seed, std::bit_cast<std::uint64_t>(p.snr_db));
  s = derive_seed(s, static_cast<std::uint64_t>(p.order));
  s = derive_seed(s, static_cast<std::uint64_t>(p.n_symbols));
  s = derive_seed(s, static_cast<std::uint64_t>(p.m_lags));
  return derive_seed(s, static_cast<std::uint64_t>(trial_index));
}

SampledSignal synthesize(const ExperimentConfig& cfg, const GridPoint& p, std::uint64_t seed)
{
  switch (cfg.modulation) {
  case Modulation::Ofdm: {
    auto o = cfg.ofdm;
    o.modulation_order = p.order;
    o.n_symbols = p.n_symbols;
    o.seed = seed;
    return generate_ofdm(o);
  }
  case Modulation::Noise: {
    Rng rng(seed);
    SampledSignal sig;
    sig.samples.resize(static_cast<std::size_t>(p.n_symbols));
    for (auto& v : sig.samples)
      v = rng.complex_normal(1.0);
    sig.sample_rate = cfg.sc.sample_rate;
    sig.label = "NOISE";
    return sig;
  }
  case Modulation::ScPsk:
  case Modulation::ScFsk:
  case Modulation::ScQam: {
    auto s = cfg.sc;
    s.scheme = cfg.modulation == Modulation::ScPsk   ? ModulationScheme::Psk
               : cfg.modulation == Modulation::ScFsk ? ModulationScheme::Fsk
                                                     : ModulationScheme::Qam;
    s.modulation_order = p.order;
    s.n_symbols = p.n_symbols;
    s.seed = seed;
    return generate_sc(s);
  }
  }
  throw ConfigError("unsupported modulation");
}

void validate(const SynthRequest& req)
{
  ExperimentConfig cfg;
  cfg.modulation = req.modulation;
  cfg.order = req.order;
  cfg.n_symbols = req.n_symbols;
  cfg.ofdm = req.ofdm;
  cfg.sc = req.sc;
  cfg.channel = req.channel;
  cfg.impairments = req.impairments;
  cfg.snr_grid_db = {0.0};
  validate(cfg);
}

SampledSignal synthesize(const SynthRequest& req)
{
  validate(req);
  ExperimentConfig cfg;
  cfg.modulation = req.modulation;
  cfg.ofdm = req.ofdm;
  cfg.sc = req.sc;
  const GridPoint p{req.impairments.snr_db, req.order, req.n_symbols, 0};
  const auto tx = synthesize(cfg, p, derive_seed(req.seed, kWaveformStream));
  auto imp = req.impairments;
  imp.seed = derive_seed(req.seed, kChannelStream);
  return apply_channel(tx, req.channel, imp);
}

GaussianityDecision run_trial(const ExperimentConfig& cfg, const GridPoint& p, int trial_index)
{
  const std::uint64_t seed = trial_seed(cfg.master_seed, p, trial_index);
  const auto tx = synthesize(cfg, p, derive_seed(seed, kWaveformStream));
  auto imp = cfg.impairments;
  imp.snr_db = p.snr_db;
  imp.seed = derive_seed(seed, kChannelStream);
  const auto rx = apply_channel(tx, cfg.channel, imp);
  auto det = cfg.detector;
  det.max_lag = p.m_lags;
  return identify(rx, det);
}

GaussianityDecision run_trial(const ExperimentConfig& cfg, double snr_db, int trial_index)
{
  return run_trial(cfg, GridPoint{snr_db, cfg.order, cfg.n_symbols, cfg.detector.max_lag},
                   trial_index);
}

PointOutcome run_point(const ExperimentConfig& cfg, const GridPoint& p)
{
  PointOutcome out;
  out.point = p;
  out.statistics.resize(static_cast<std::size_t>(cfg.trials));
  std::vector<char> rejected(static_cast<std::size_t>(cfg.trials), 0);
  parallel_for(cfg.trials, cfg.threads, [&](int t) {
    const auto d = run_trial(cfg, p, t);
    out.statistics[static_cast<std::size_t>(t)] = d.statistic;
    rejected[static_cast<std::size_t>(t)] = d.verdict == Verdict::SingleCarrier;
  });
  out.threshold = chi2_quantile(p.m_lags + 1, cfg.detector.significance);
  for (char r : rejected)
    out.rejections += r;
  return out;
}

std::pair<double, double> wilson_interval(int k, int n, double z)
{
  if (n <= 0)
    return {0.0, 1.0};
  const double nn = n;
  const double p = k / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The bounds are exactly 0 and 1 at the extremes; avoid rounding there.
  const double lo = k <= 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = k >= n ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

SweepResult run_experiment(const ExperimentConfig& cfg)
{
  validate(cfg);
  SweepResult res;
  for (const auto& p : grid_points(cfg)) {
    const auto outcome = run_point(cfg, p);
    const auto [lo, hi] = wilson_interval(outcome.rejections, cfg.trials);
    SweepRow row;
    row.snr_db = p.snr_db;
    row.modulation = cfg.modulation;
    row.order = p.order;
    row.n_symbols = p.n_symbols;
    row.alpha = cfg.detector.significance;
    row.m_lags = p.m_lags;
    row.trials = cfg.trials;
    row.p_reject = static_cast<double>(outcome.rejections) / cfg.trials;
    row.ci_lo = lo;
    row.ci_hi = hi;
    res.rows.push_back(row);
  }
  return res;
}

Verdict baseline_sum_cumulant(std::span<const double> series, int max_lag, double threshold)
{
  if (!(threshold > 0.0))
    throw ConfigError("baseline threshold must be positive");
  const auto y = demean(series);
  const auto c = cumulant_vector(y, max_lag);
  double sum = 0.0;
  for (double v : c.values)
    sum += std::abs(v);
  return sum > threshold ? Verdict::SingleCarrier : Verdict::MultiCarrierOfdm;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path, bool append)
{
  const bool has_content =
      append && std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
  std::ofstream os(path, append ? std::ios::app : std::ios::trunc);
  if (!os)
    throw IoError("cannot open '" + path.string() + "' for writing");
  if (!has_content)
    os << kCsvHeader << '\n';
  for (const auto& r : result.rows)
    os << csv_line(r) << '\n';
  os.flush();
  if (!os)
    throw IoError("write failed for '" + path.string() + "'");
}

SweepResult parse_csv(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw IoError("cannot open '" + path.string() + "' for reading");
  SweepResult res;
  std::string line;
  int line_no = 0;
  const auto bad = [&](const std::string& why) {
    return IoError(path.string() + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == kCsvHeader)
      continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      f.push_back(cell);
    if (f.size() != 10)
      throw bad("expected 10 columns, found " + std::to_string(f.size()));
    SweepRow r;
    bool ok = detail::parse_double(f[0], r.snr_db) && detail::parse_int(f[2], r.order) &&
              detail::parse_int(f[3], r.n_symbols) && detail::parse_double(f[4], r.alpha) &&
              detail::parse_int(f[5], r.m_lags) && detail::parse_int(f[6], r.trials) &&
              detail::parse_double(f[7], r.p_reject) && detail::parse_double(f[8], r.ci_lo) &&
              detail::parse_double(f[9], r.ci_hi);
    if (!ok)
      throw bad("malformed number");
    r.modulation = parse_modulation(f[1]);
    res.rows.push_back(r);
  }
  return res;
}

} // namespace ofdmid
