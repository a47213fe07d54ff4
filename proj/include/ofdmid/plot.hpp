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

namespace ofdmid {

/// SVG line plot of p_reject against SNR with Wilson whiskers; one curve per
/// (order, n_symbols, m_lags) combination. A dashed line marks alpha.
std::string render_svg(const SweepResult& result, const std::string& title = "");

void write_svg(const SweepResult& result, const std::filesystem::path& path,
               const std::string& title = "");

} // namespace ofdmid
