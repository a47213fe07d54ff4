/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end. Talks to the library only through the C API.

#include "ofdmid/ofdmid.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(ofdmid_status s)
{
  return s == OFDMID_E_CONFIG ? kExitConfig : kExitRuntime;
}

void check(ofdmid_status s)
{
  if (s != OFDMID_OK)
    throw Failure{exit_code(s), ofdmid_last_error()};
}

json load_json(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw Failure{kExitConfig, "cannot open config '" + path + "'"};
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw Failure{kExitConfig, path + ": " + e.what()};
  }
}

// Four taps with exponentially decaying power, redrawn every 160 samples.
json rayleigh_channel()
{
  json powers = json::array();
  double total = 0.0;
  for (int m = 0; m < 4; ++m)
    total += std::exp(-m);
  for (int m = 0; m < 4; ++m)
    powers.push_back(std::exp(-m) / total);
  return {{"tap_delays_samples", {0, 1, 2, 3}},
          {"tap_power_profile", powers},
          {"fading", "rayleigh"},
          {"coherence_samples", 160}};
}

json snr_value(double snr)
{
  return std::isinf(snr) ? json("inf") : json(snr);
}

struct SignalOptions {
  std::string modulation = "OFDM";
  std::optional<int> order;
  int n_symbols = 1024;
  std::uint64_t seed = 1;
  double snr_db = INFINITY;
  std::string channel = "awgn";
  double cfo = 0.0;
  double phase_walk = 0.0;
  std::string config;

  void add(CLI::App* app)
  {
    app->add_option("-m,--modulation", modulation, "OFDM, SC-PSK, SC-FSK, SC-QAM or NOISE")
        ->capture_default_str();
    app->add_option("--order", order, "modulation order (default 16 for OFDM, 32 otherwise)");
    app->add_option("-n,--n-symbols", n_symbols, "symbols (samples for NOISE)")
        ->capture_default_str();
    app->add_option("--seed", seed, "waveform and channel seed")->capture_default_str();
    app->add_option("--snr", snr_db, "SNR in dB; omit for a noiseless record");
    app->add_option("--channel", channel, "awgn or rayleigh (4-tap, per-symbol fading)")
        ->check(CLI::IsMember({"awgn", "rayleigh"}))
        ->capture_default_str();
    app->add_option("--cfo", cfo, "carrier offset, cycles per sample")->capture_default_str();
    app->add_option("--phase-walk", phase_walk, "phase random-walk std, rad per sample");
    app->add_option("--synth-config", config, "JSON synthesis request; flags override it");
  }

  std::string request(const CLI::App* app) const
  {
    json j = config.empty() ? json::object() : load_json(config);
    const auto given = [&](const char* name) { return app->count(name) > 0; };
    if (config.empty() || given("--modulation"))
      j["modulation"] = modulation;
    if (order)
      j["order"] = *order;
    else if (!j.contains("order"))
      j["order"] = j.value("modulation", modulation) == "OFDM" ? 16 : 32;
    if (config.empty() || given("--n-symbols"))
      j["n_symbols"] = n_symbols;
    if (config.empty() || given("--seed"))
      j["seed"] = seed;
    if (given("--channel") || (config.empty() && channel == "rayleigh"))
      j["channel"] = channel == "rayleigh" ? rayleigh_channel() : json::object();
    json& imp = j["impairments"];
    if (!imp.is_object())
      imp = json::object();
    if (given("--snr"))
      imp["snr_db"] = snr_value(snr_db);
    if (given("--cfo"))
      imp["cfo_normalized"] = cfo;
    if (given("--phase-walk"))
      imp["phase_walk_std"] = phase_walk;
    return j.dump();
  }
};

struct DetectorOptions {
  std::optional<double> alpha;
  std::optional<int> m_lags;
  std::optional<int> kn;
  std::optional<std::string> source;
  bool imag = false;
  std::string config;

  void add(CLI::App* app)
  {
    app->add_option("-a,--alpha", alpha, "significance level (default 0.1)");
    app->add_option("-M,--lags", m_lags, "largest lag M (default 12)");
    app->add_option("--kn", kn, "covariance truncation K_N (default: data driven)");
    app->add_option("--covariance", source, "gaussian or sample")
        ->check(CLI::IsMember({"gaussian", "sample"}));
    app->add_flag("--imag", imag, "also report the statistic of the imaginary part");
    app->add_option("--detector-config", config, "JSON detector settings; flags override it");
  }

  std::string request() const
  {
    json j = config.empty() ? json::object() : load_json(config);
    if (alpha)
      j["significance"] = *alpha;
    if (m_lags)
      j["M"] = *m_lags;
    if (kn)
      j["K_N"] = *kn;
    if (source)
      j["covariance_source"] = *source;
    if (imag)
      j["imag_diagnostic"] = true;
    return j.dump();
  }
};

class SignalHandle {
public:
  SignalHandle() = default;
  SignalHandle(const SignalHandle&) = delete;
  SignalHandle& operator=(const SignalHandle&) = delete;
  ~SignalHandle() { ofdmid_signal_destroy(p_); }
  ofdmid_signal** out() { return &p_; }
  const ofdmid_signal* get() const { return p_; }

private:
  ofdmid_signal* p_ = nullptr;
};

class SweepHandle {
public:
  SweepHandle() = default;
  SweepHandle(const SweepHandle&) = delete;
  SweepHandle& operator=(const SweepHandle&) = delete;
  ~SweepHandle() { ofdmid_sweep_destroy(p_); }
  ofdmid_sweep** out() { return &p_; }
  const ofdmid_sweep* get() const { return p_; }

private:
  ofdmid_sweep* p_ = nullptr;
};

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Blind OFDM / single-carrier identification by a fourth-order Gaussianity test"};
  app.set_version_flag("--version", std::string(ofdmid_version()));
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "generate a received waveform file");
  SignalOptions synth_sig;
  std::string synth_out;
  synth_sig.add(synth);
  synth->add_option("-o,--output", synth_out, "cf32 output file (sidecar: <file>.meta.json)")
      ->required();

  auto* ident = app.add_subcommand("identify", "classify a waveform file or a generated record");
  SignalOptions ident_sig;
  DetectorOptions ident_det;
  std::string ident_in;
  ident->add_option("input", ident_in, "cf32 waveform file; omit to generate one");
  ident_sig.add(ident);
  ident_det.add(ident);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo detection-probability sweep");
  std::string sweep_cfg, sweep_out, sweep_plot;
  std::optional<int> sweep_trials, sweep_threads;
  std::optional<std::uint64_t> sweep_seed;
  bool sweep_append = false;
  sweep->add_option("-c,--config", sweep_cfg, "experiment JSON")->required();
  sweep->add_option("-o,--output", sweep_out, "CSV output file")->required();
  sweep->add_flag("--append", sweep_append, "append rows to an existing CSV");
  sweep->add_option("--plot", sweep_plot, "also write an SVG plot");
  sweep->add_option("--trials", sweep_trials, "override trials");
  sweep->add_option("--seed", sweep_seed, "override master_seed");
  sweep->add_option("--threads", sweep_threads, "override threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (synth->parsed()) {
      SignalHandle sig;
      check(ofdmid_signal_synth(synth_sig.request(synth).c_str(), sig.out()));
      check(ofdmid_signal_write(sig.get(), synth_out.c_str()));
      std::cout << "wrote " << ofdmid_signal_length(sig.get()) << " samples to " << synth_out
                << '\n';
    } else if (ident->parsed()) {
      SignalHandle sig;
      if (!ident_in.empty())
        check(ofdmid_signal_read(ident_in.c_str(), sig.out()));
      else
        check(ofdmid_signal_synth(ident_sig.request(ident).c_str(), sig.out()));
      ofdmid_decision d{};
      char* record = nullptr;
      check(ofdmid_identify(sig.get(), ident_det.request().c_str(), &d, &record));
      std::cout << record << '\n';
      ofdmid_string_free(record);
    } else if (sweep->parsed()) {
      json cfg = load_json(sweep_cfg);
      if (sweep_trials)
        cfg["trials"] = *sweep_trials;
      if (sweep_seed)
        cfg["master_seed"] = *sweep_seed;
      if (sweep_threads)
        cfg["threads"] = *sweep_threads;
      SweepHandle res;
      check(ofdmid_sweep_run(cfg.dump().c_str(), res.out()));
      check(ofdmid_sweep_write_csv(res.get(), sweep_out.c_str(), sweep_append ? 1 : 0));
      if (!sweep_plot.empty())
        check(ofdmid_sweep_write_svg(res.get(), sweep_plot.c_str(), cfg.value("modulation", "")
                                                                     .c_str()));
      for (size_t i = 0; i < ofdmid_sweep_rows(res.get()); ++i) {
        ofdmid_sweep_row r{};
        check(ofdmid_sweep_get_row(res.get(), i, &r));
        std::printf("%s order=%d N=%d M=%d snr=%g dB  p_reject=%.3f [%.3f, %.3f]\n",
                    r.modulation, r.order, r.n_symbols, r.m_lags, r.snr_db, r.p_reject, r.ci_lo,
                    r.ci_hi);
      }
    }
  } catch (const Failure& f) {
    std::cerr << "ofdmid: error: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
