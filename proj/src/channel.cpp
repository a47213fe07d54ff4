/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/channel.hpp"

#include "ofdmid/error.hpp"
#include "ofdmid/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ofdmid {
namespace {

enum StreamTag : std::uint64_t { kMultipathStream = 1, kPhaseStream = 2, kNoiseStream = 3 };

} // namespace

std::string to_string(Fading f)
{
  return f == Fading::Static ? "Static" : "PerSymbolRayleigh";
}

Fading parse_fading(const std::string& text)
{
  if (text == "Static" || text == "static") return Fading::Static;
  if (text == "PerSymbolRayleigh" || text == "rayleigh") return Fading::PerSymbolRayleigh;
  throw ConfigError("unknown fading mode '" + text + "'");
}

ChannelProfile identity_profile()
{
  return ChannelProfile{};
}

ChannelProfile rayleigh_profile(int n_taps, double decay_taps, int coherence_samples)
{
  if (n_taps < 1 || !(decay_taps > 0.0))
    throw ConfigError("rayleigh_profile needs n_taps >= 1 and a positive decay");
  ChannelProfile p;
  p.tap_delays_samples.clear();
  p.tap_power_profile.clear();
  double total = 0.0;
  for (int m = 0; m < n_taps; ++m) {
    p.tap_delays_samples.push_back(m);
    p.tap_power_profile.push_back(std::exp(-m / decay_taps));
    total += p.tap_power_profile.back();
  }
  for (auto& v : p.tap_power_profile)
    v /= total;
  p.fading = Fading::PerSymbolRayleigh;
  p.coherence_samples = coherence_samples;
  return p;
}

void validate(const ChannelProfile& prof)
{
  if (prof.tap_delays_samples.empty())
    throw ConfigError("channel profile has no taps");
  if (prof.tap_delays_samples.size() != prof.tap_power_profile.size())
    throw ConfigError("tap delay and power lists differ in length");
  if (prof.tap_delays_samples.front() != 0)
    throw ConfigError("first tap delay must be 0");
  for (std::size_t m = 1; m < prof.n_taps(); ++m)
    if (prof.tap_delays_samples[m] <= prof.tap_delays_samples[m - 1])
      throw ConfigError("tap delays must be strictly increasing");
  double total = 0.0;
  for (double p : prof.tap_power_profile) {
    if (!(p > 0.0))
      throw ConfigError("tap powers must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConfigError("tap powers must sum to 1");
  if (prof.coherence_samples < 1)
    throw ConfigError("coherence_samples must be >= 1");
}

void validate(const ImpairmentConfig& imp)
{
  if (!(std::abs(imp.cfo_normalized) < 0.5))
    throw ConfigError("|cfo_normalized| must be < 0.5");
  if (!(imp.phase_walk_std >= 0.0))
    throw ConfigError("phase_walk_std must be >= 0");
  if (std::isnan(imp.snr_db))
    throw ConfigError("snr_db is NaN");
}

SampledSignal apply_taps(const SampledSignal& sig, const std::vector<int>& delays,
                         const std::vector<cplx>& gains)
{
  if (delays.empty() || delays.size() != gains.size())
    throw ConfigError("apply_taps needs matching, non-empty delay and gain lists");
  const auto n = static_cast<std::ptrdiff_t>(sig.samples.size());
  SampledSignal out = sig;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cplx acc{};
    for (std::size_t m = 0; m < delays.size(); ++m) {
      const std::ptrdiff_t j = i - delays[m];
      if (j >= 0)
        acc += gains[m] * sig.samples[static_cast<std::size_t>(j)];
    }
    out.samples[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

SampledSignal apply_multipath(const SampledSignal& sig, const ChannelProfile& prof,
                              std::uint64_t seed)
{
  validate(prof);
  if (static_cast<std::size_t>(prof.tap_delays_samples.back()) >= sig.samples.size())
    throw ConfigError("channel delay spread exceeds the signal length");

  const std::size_t taps = prof.n_taps();
  if (prof.fading == Fading::Static) {
    std::vector<cplx> gains(taps);
    for (std::size_t m = 0; m < taps; ++m)
      gains[m] = std::sqrt(prof.tap_power_profile[m]);
    return apply_taps(sig, prof.tap_delays_samples, gains);
  }

  Rng rng(seed);
  const std::size_t n = sig.samples.size();
  const auto block = static_cast<std::size_t>(prof.coherence_samples);
  SampledSignal out = sig;
  std::vector<cplx> h(taps);
  for (std::size_t start = 0; start < n; start += block) {
    for (std::size_t m = 0; m < taps; ++m)
      h[m] = rng.complex_normal(prof.tap_power_profile[m]);
    const std::size_t stop = std::min(n, start + block);
    for (std::size_t i = start; i < stop; ++i) {
      cplx acc{};
      for (std::size_t m = 0; m < taps; ++m) {
        const auto d = static_cast<std::size_t>(prof.tap_delays_samples[m]);
        if (i >= d)
          acc += h[m] * sig.samples[i - d];
      }
      out.samples[i] = acc;
    }
  }
  return out;
}

SampledSignal apply_cfo_phase(const SampledSignal& sig, const ImpairmentConfig& imp)
{
  validate(imp);
  SampledSignal out = sig;
  Rng rng(derive_seed(imp.seed, kPhaseStream));
  double walk = 0.0;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    if (imp.phase_walk_std > 0.0 && i > 0)
      walk += imp.phase_walk_std * rng.normal();
    // Reduce the CFO phase in cycles first so large i keeps full precision.
    const double cycles = std::remainder(imp.cfo_normalized * static_cast<double>(i), 1.0);
    const double phase = imp.phase_offset_rad + walk + 2.0 * std::numbers::pi * cycles;
    out.samples[i] *= std::polar(1.0, phase);
  }
  return out;
}

SampledSignal add_awgn(const SampledSignal& sig, double snr_db, std::uint64_t seed)
{
  if (std::isnan(snr_db))
    throw ConfigError("snr_db is NaN");
  if (std::isinf(snr_db) && snr_db > 0)
    return sig;
  const double p_sig = mean_power(sig.samples);
  if (!(p_sig > 0.0))
    throw NumericalError("cannot set an SNR on a zero-power signal");
  const double noise_var = p_sig * std::pow(10.0, -snr_db / 10.0);
  Rng rng(seed);
  SampledSignal out = sig;
  for (auto& s : out.samples)
    s += rng.complex_normal(noise_var);
  return out;
}

SampledSignal apply_channel(const SampledSignal& sig, const ChannelProfile& prof,
                            const ImpairmentConfig& imp)
{
  auto faded = apply_multipath(sig, prof, derive_seed(imp.seed, kMultipathStream));
  auto rotated = apply_cfo_phase(faded, imp);
  return add_awgn(rotated, imp.snr_db, derive_seed(imp.seed, kNoiseStream));
}

} // namespace ofdmid
