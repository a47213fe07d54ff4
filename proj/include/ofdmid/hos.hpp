/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Sample moments and diagonal-lag fourth-order cumulants of a real series.
//
// All estimators are biased: sums run over the indices that fall inside the
// record (no wrap-around) and are divided by the full length N.

namespace ofdmid {

/// Records shorter than this are flagged as unreliable for the Gaussianity
/// assumption; the estimators still run.
inline constexpr std::size_t kReliableLength = 200;

/// Lag span used when the symbol duration of the signal under test is unknown.
inline constexpr int kBlindLagSpan = 12;

/// c4(lambda, lambda, 0) for lambda = 0..max_lag.
struct CumulantVector {
  std::vector<double> values;
  int max_lag = 0;
  std::size_t n = 0;

  std::size_t size() const { return values.size(); }
};

/// Throws NumericalError unless the series has N >= 2 finite values.
void check_series(std::span<const double> y);

std::vector<double> demean(std::span<const double> y);

/// (1/N) sum_i y(i) y(i + lag); negative lags pair y(i) with y(i - |lag|).
double autocorr_biased(std::span<const double> y, int lag);

/// (1/N) sum_t y(t) y(t + l_1) ... y(t + l_{k-1}) over every t that keeps all
/// indices inside the record. lags.size() must equal order - 1.
double moment_est(std::span<const double> y, std::span<const int> lags, int order);

/// Overload inferring the order from the lag count.
double moment_est(std::span<const double> y, std::span<const int> lags);

/// m4(l,l,0) - c2(l)^2 - c2(l) c2(-l) - c2(0)^2, with the first sum stopping at
/// N - lag and the last one covering the whole record.
double cumulant4_diag(std::span<const double> y, int lag);

/// Cumulants on the diagonal lag set (l, l, 0), l = 0..max_lag. Emits a warning
/// for records shorter than kReliableLength.
CumulantVector cumulant_vector(std::span<const double> y, int max_lag);

/// round(multiple * symbol_samples): the lag span covering 1.5 symbols by default.
int lag_span_for_symbol(double symbol_samples, double multiple = 1.5);

} // namespace ofdmid
