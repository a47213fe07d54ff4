/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/chi2.hpp"

#include "ofdmid/error.hpp"

#include <algorithm>
#include <cmath>

namespace ofdmid {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

double log_prefactor(double a, double x)
{
  return -x + a * std::log(x) - std::lgamma(a);
}

// Power series for P(a, x); converges quickly for x < a + 1.
double p_series(double a, double x)
{
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps)
      break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Continued fraction for Q(a, x) (modified Lentz); used for x >= a + 1.
double q_continued_fraction(double a, double x)
{
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps)
      break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

void check_args(double a, double x)
{
  if (!(a > 0.0) || !(x >= 0.0))
    throw ConfigError("incomplete gamma needs a > 0 and x >= 0");
}

} // namespace

double gamma_p(double a, double x)
{
  check_args(a, x);
  if (x == 0.0)
    return 0.0;
  return x < a + 1.0 ? p_series(a, x) : 1.0 - q_continued_fraction(a, x);
}

double gamma_q(double a, double x)
{
  check_args(a, x);
  if (x == 0.0)
    return 1.0;
  return x < a + 1.0 ? 1.0 - p_series(a, x) : q_continued_fraction(a, x);
}

double chi2_sf(int dof, double x)
{
  if (dof < 1)
    throw ConfigError("chi-squared degrees of freedom must be >= 1");
  if (x <= 0.0)
    return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chi2_quantile(int dof, double significance)
{
  if (dof < 1)
    throw ConfigError("chi-squared degrees of freedom must be >= 1");
  if (!(significance > 0.0 && significance < 1.0))
    throw ConfigError("significance must lie in (0, 1)");

  const double k = dof;
  // Bracket the root of sf(x) - significance; sf is strictly decreasing.
  double lo = 0.0;
  double hi = std::max(1.0, k);
  while (chi2_sf(dof, hi) > significance)
    hi *= 2.0;

  // Start at the mean and take Newton steps, falling back to bisection
  // whenever a step leaves the bracket.
  double x = std::clamp(k, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = chi2_sf(dof, x) - significance;
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    const double log_pdf =
        (0.5 * k - 1.0) * std::log(x) - 0.5 * x - 0.5 * k * std::log(2.0) - std::lgamma(0.5 * k);
    const double pdf = std::exp(log_pdf);
    double next = (pdf > 0.0 && std::isfinite(pdf)) ? x + f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-14 * std::max(1.0, x) || hi - lo <= 1e-14 * std::max(1.0, x))
      return next;
    x = next;
  }
  return x;
}

} // namespace ofdmid
