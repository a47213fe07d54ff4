/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace ofdmid {

/// Sidecar metadata stored next to a waveform file as "<path>.meta.json".
struct WaveformMetadata {
  double sample_rate = 1.0;
  std::string scheme;     // "OFDM", "SC-PSK", "SC-FSK", "SC-QAM" or free text
  int order = 0;
  int n_symbols = 0;
  std::uint64_t seed = 0;
  std::string label;
  std::uint64_t n_samples = 0; // filled in by write_waveform
};

std::filesystem::path metadata_path(const std::filesystem::path& iq_path);

/// Writes little-endian interleaved float32 I/Q and the JSON sidecar.
void write_waveform(const std::filesystem::path& path, const SampledSignal& sig,
                    WaveformMetadata meta);

/// Reads an I/Q file. The sidecar is optional; without it the sample rate is 1.
SampledSignal read_waveform(const std::filesystem::path& path,
                            WaveformMetadata* meta_out = nullptr);

} // namespace ofdmid
