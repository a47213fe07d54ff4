/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <string_view>

namespace ofdmid {

using WarningHandler = std::function<void(std::string_view)>;

// Installs a process-wide sink for non-fatal warnings (short records, clamped
// truncation limits). Passing an empty handler restores the stderr default.
void set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

} // namespace ofdmid
