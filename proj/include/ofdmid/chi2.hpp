/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

namespace ofdmid {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without
/// cancellation in the upper tail.
double gamma_q(double a, double x);

/// P[chi2_dof >= x].
double chi2_sf(int dof, double x);

/// Threshold t with P[chi2_dof >= t] = significance.
double chi2_quantile(int dof, double significance);

} // namespace ofdmid
