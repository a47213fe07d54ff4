/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/signal.hpp"

#include "ofdmid/error.hpp"

#include <cmath>

namespace ofdmid {

void validate(const SampledSignal& sig)
{
  if (sig.samples.empty())
    throw NumericalError("signal '" + sig.label + "' is empty");
  for (const auto& s : sig.samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw NumericalError("signal '" + sig.label + "' contains non-finite samples");
  }
}

double mean_power(const std::vector<cplx>& samples)
{
  if (samples.empty())
    return 0.0;
  double acc = 0.0;
  for (const auto& s : samples)
    acc += std::norm(s);
  return acc / static_cast<double>(samples.size());
}

std::vector<double> real_part(const std::vector<cplx>& samples)
{
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out[i] = samples[i].real();
  return out;
}

std::vector<double> imag_part(const std::vector<cplx>& samples)
{
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out[i] = samples[i].imag();
  return out;
}

} // namespace ofdmid
