/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/log.hpp"

#include <iostream>
#include <mutex>
#include <string>

namespace ofdmid {
namespace {

std::mutex g_mutex;
WarningHandler g_handler;

} // namespace

void set_warning_handler(WarningHandler handler)
{
  std::lock_guard lock(g_mutex);
  g_handler = std::move(handler);
}

void warn(std::string_view message)
{
  std::lock_guard lock(g_mutex);
  if (g_handler) {
    g_handler(message);
    return;
  }
  std::cerr << "ofdmid: warning: " << message << '\n';
}

} // namespace ofdmid
