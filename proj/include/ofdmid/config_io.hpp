/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/harness.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ofdmid {

// JSON keys mirror the struct fields. Missing keys keep their defaults and
// unknown keys are rejected with ConfigError. "snr_db" accepts "inf".

ExperimentConfig experiment_from_json(std::string_view text);
std::string to_json(const ExperimentConfig& cfg);

SynthRequest synth_request_from_json(std::string_view text);
std::string to_json(const SynthRequest& req);

DetectorConfig detector_from_json(std::string_view text);
std::string to_json(const DetectorConfig& cfg);

std::string read_text_file(const std::filesystem::path& path);

} // namespace ofdmid
