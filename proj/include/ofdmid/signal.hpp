/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ofdmid {

using cplx = std::complex<double>;

/// Complex baseband record y(i), i = 0..N-1.
struct SampledSignal {
  std::vector<cplx> samples;
  double sample_rate = 1.0; // Hz; metadata only, processing is in sample units
  std::string label;
};

/// Throws NumericalError on an empty record or non-finite samples.
void validate(const SampledSignal& sig);

/// Mean |y(i)|^2.
double mean_power(const std::vector<cplx>& samples);

std::vector<double> real_part(const std::vector<cplx>& samples);
std::vector<double> imag_part(const std::vector<cplx>& samples);

} // namespace ofdmid
