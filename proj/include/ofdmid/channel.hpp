/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/signal.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ofdmid {

enum class Fading { Static, PerSymbolRayleigh };

std::string to_string(Fading f);
Fading parse_fading(const std::string& text);

/// Sample-spaced tapped delay line. Taps are redrawn every coherence_samples
/// samples in PerSymbolRayleigh mode; Static uses amplitudes sqrt(power).
struct ChannelProfile {
  std::vector<int> tap_delays_samples{0};
  std::vector<double> tap_power_profile{1.0};
  Fading fading = Fading::Static;
  int coherence_samples = 160;

  std::size_t n_taps() const { return tap_delays_samples.size(); }
};

/// Single unit tap: the AWGN-only channel.
ChannelProfile identity_profile();

/// n_taps Rayleigh taps at delays 0..n_taps-1 with powers proportional to
/// exp(-m / decay_taps), redrawn every coherence_samples samples.
ChannelProfile rayleigh_profile(int n_taps = 4, double decay_taps = 1.0,
                                int coherence_samples = 160);

struct ImpairmentConfig {
  double cfo_normalized = 0.0;   // cycles per sample
  double phase_offset_rad = 0.0;
  double phase_walk_std = 0.0;   // rad per sample, random walk
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

void validate(const ChannelProfile& prof);
void validate(const ImpairmentConfig& imp);

/// out(i) = sum_m gains[m] * in(i - delays[m]); samples before the record are 0
/// and the output keeps the input length.
SampledSignal apply_taps(const SampledSignal& sig, const std::vector<int>& delays,
                         const std::vector<cplx>& gains);

SampledSignal apply_multipath(const SampledSignal& sig, const ChannelProfile& prof,
                              std::uint64_t seed);

/// out(i) = in(i) * exp(j(theta_i + 2 pi df i)), theta_i = offset + random walk.
SampledSignal apply_cfo_phase(const SampledSignal& sig, const ImpairmentConfig& imp);

/// Adds circular white Gaussian noise at the requested SNR, measured against
/// the mean power of the input record. snr_db = +inf returns the input.
SampledSignal add_awgn(const SampledSignal& sig, double snr_db, std::uint64_t seed);

/// Full received-signal chain: noise(cfo_phase(multipath(x))). Each stage draws
/// from its own stream derived from imp.seed.
SampledSignal apply_channel(const SampledSignal& sig, const ChannelProfile& prof,
                            const ImpairmentConfig& imp);

} // namespace ofdmid
