/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/signal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ofdmid {

enum class ModulationScheme { Psk, Fsk, Qam };

std::string to_string(ModulationScheme scheme);
ModulationScheme parse_modulation_scheme(const std::string& text);

/// Multicarrier transmit parameters. Defaults follow the measurement setup:
/// 64 active carriers on a 2x oversampled IDFT and a quarter-length prefix.
struct OfdmConfig {
  int active_carriers = 64;
  int idft_size = 128;
  int data_duration_samples = 128; // must equal idft_size
  double cp_fraction = 0.25;
  ModulationScheme subcarrier_modulation = ModulationScheme::Qam;
  int modulation_order = 16;
  int n_symbols = 1024;
  std::uint64_t seed = 1;
  double sample_rate = 32e6; // 128 bins x 250 kHz spacing

  int cp_samples() const;
  int symbol_samples() const { return data_duration_samples + cp_samples(); }
};

/// Single-carrier transmit parameters.
struct ScConfig {
  ModulationScheme scheme = ModulationScheme::Qam;
  int modulation_order = 32;
  int samples_per_symbol = 4;
  double rrc_rolloff = 0.3;
  int rrc_span_symbols = 8;
  // Cycles per sample between adjacent tones; 1/(2*sps) when unset.
  std::optional<double> fsk_tone_spacing;
  int n_symbols = 1024;
  std::uint64_t seed = 1;
  double sample_rate = 1e6; // 4 samples x 250 kHz symbol rate

  double tone_spacing() const;
};

void validate(const OfdmConfig& cfg);
void validate(const ScConfig& cfg);

/// Unit-average-power constellation points for (scheme, order).
///
/// PSK: order-th roots of unity. QAM: square grid when log2(order) is even;
/// for odd log2(order) the 2-point set {+1,-1}, the 4x2 rectangle at 8 points
/// and cross constellations (square minus corner blocks) from 32 points up.
/// FSK has no complex constellation and is rejected.
std::vector<cplx> constellation(ModulationScheme scheme, int order);

/// i.i.d. uniform draws from constellation(scheme, order).
std::vector<cplx> map_symbols(int order, ModulationScheme scheme, std::size_t count,
                              std::uint64_t seed);

/// Root-raised-cosine taps, length span*sps + 1, even-symmetric, unit energy.
std::vector<double> rrc_taps(double rolloff, int span_symbols, int sps);

/// OFDM record: n_symbols blocks of cp_samples + idft_size samples, mean power 1.
SampledSignal generate_ofdm(const OfdmConfig& cfg);

/// Single-carrier record.
///
/// PSK/QAM: symbols are zero-stuffed by sps and fully convolved with the RRC
/// pulse, so the record holds n_symbols*sps + span*sps samples (the filter
/// transient is kept). FSK: continuous-phase tones, n_symbols*sps samples,
/// unit modulus. Both are scaled to mean power 1.
SampledSignal generate_sc(const ScConfig& cfg);

} // namespace ofdmid
