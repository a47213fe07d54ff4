/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ofdmid {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combines a parent seed with a stream tag into a child seed.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept;

/// Deterministic random source. Every distribution is computed here from the
/// raw 64-bit engine output, so the streams do not depend on the standard
/// library's (implementation-defined) distribution algorithms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal (Box-Muller, pairs cached).
  double normal() noexcept;

  /// Circular complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance) noexcept;

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

} // namespace ofdmid
