/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/hos.hpp"

#include "ofdmid/error.hpp"
#include "ofdmid/log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace ofdmid {
namespace {

void check_lag(std::size_t n, int lag)
{
  if (static_cast<std::size_t>(std::abs(lag)) >= n)
    throw ConfigError("lag " + std::to_string(lag) + " out of range for a series of length " +
                      std::to_string(n));
}

double c2(std::span<const double> y, int lag)
{
  const std::size_t n = y.size();
  const auto a = static_cast<std::size_t>(std::abs(lag));
  double acc = 0.0;
  if (lag >= 0) {
    for (std::size_t i = 0; i + a < n; ++i)
      acc += y[i] * y[i + a];
  } else {
    for (std::size_t i = a; i < n; ++i)
      acc += y[i] * y[i - a];
  }
  return acc / static_cast<double>(n);
}

double c4_diag(std::span<const double> y, int lag)
{
  const std::size_t n = y.size();
  const auto l = static_cast<std::size_t>(lag);
  double m4 = 0.0;
  for (std::size_t i = 0; i + l < n; ++i) {
    const double p = y[i] * y[i + l];
    m4 += p * p;
  }
  m4 /= static_cast<double>(n);
  const double pos = c2(y, lag);
  const double neg = c2(y, -lag);
  const double zero = c2(y, 0);
  return m4 - pos * pos - pos * neg - zero * zero;
}

} // namespace

void check_series(std::span<const double> y)
{
  if (y.size() < 2)
    throw NumericalError("series needs at least 2 samples");
  for (double v : y)
    if (!std::isfinite(v))
      throw NumericalError("series contains non-finite values");
}

std::vector<double> demean(std::span<const double> y)
{
  std::vector<double> out(y.begin(), y.end());
  if (out.empty())
    return out;
  double mean = 0.0;
  for (double v : y)
    mean += v;
  mean /= static_cast<double>(y.size());
  for (auto& v : out)
    v -= mean;
  return out;
}

double autocorr_biased(std::span<const double> y, int lag)
{
  check_series(y);
  check_lag(y.size(), lag);
  return c2(y, lag);
}

double moment_est(std::span<const double> y, std::span<const int> lags, int order)
{
  if (order < 1 || lags.size() + 1 != static_cast<std::size_t>(order))
    throw ConfigError("moment order " + std::to_string(order) + " needs " +
                      std::to_string(order - 1) + " lags");
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  std::ptrdiff_t lo_shift = 0, hi_shift = 0;
  for (int l : lags) {
    if (std::abs(l) >= n)
      throw ConfigError("lag " + std::to_string(l) + " out of range for a series of length " +
                        std::to_string(n));
    lo_shift = std::min<std::ptrdiff_t>(lo_shift, l);
    hi_shift = std::max<std::ptrdiff_t>(hi_shift, l);
  }
  double acc = 0.0;
  for (std::ptrdiff_t t = -lo_shift; t + hi_shift < n; ++t) {
    double p = y[static_cast<std::size_t>(t)];
    for (int l : lags)
      p *= y[static_cast<std::size_t>(t + l)];
    acc += p;
  }
  return acc / static_cast<double>(n);
}

double moment_est(std::span<const double> y, std::span<const int> lags)
{
  return moment_est(y, lags, static_cast<int>(lags.size()) + 1);
}

double cumulant4_diag(std::span<const double> y, int lag)
{
  check_series(y);
  if (lag < 0)
    throw ConfigError("cumulant lag must be >= 0");
  check_lag(y.size(), lag);
  return c4_diag(y, lag);
}

CumulantVector cumulant_vector(std::span<const double> y, int max_lag)
{
  check_series(y);
  if (max_lag < 0)
    throw ConfigError("max_lag must be >= 0");
  check_lag(y.size(), max_lag);
  if (y.size() < kReliableLength)
    warn("record of " + std::to_string(y.size()) + " samples is shorter than " +
         std::to_string(kReliableLength) + "; the Gaussianity assumption is weak");
  CumulantVector out;
  out.max_lag = max_lag;
  out.n = y.size();
  out.values.resize(static_cast<std::size_t>(max_lag) + 1);
  for (int l = 0; l <= max_lag; ++l)
    out.values[static_cast<std::size_t>(l)] = c4_diag(y, l);
  return out;
}

int lag_span_for_symbol(double symbol_samples, double multiple)
{
  if (!(symbol_samples > 0.0) || !(multiple > 0.0))
    throw ConfigError("symbol duration and multiple must be positive");
  return static_cast<int>(std::lround(multiple * symbol_samples));
}

} // namespace ofdmid
