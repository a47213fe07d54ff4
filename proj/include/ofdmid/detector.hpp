/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "ofdmid/covariance.hpp"
#include "ofdmid/hos.hpp"
#include "ofdmid/signal.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>

namespace ofdmid {

/// H0 (Gaussian record, multicarrier) vs H1 (non-Gaussian, single carrier).
enum class Verdict { MultiCarrierOfdm, SingleCarrier };

std::string to_string(Verdict v);

struct DetectorConfig {
  double significance = 0.1;  // target false-alarm probability
  int max_lag = kBlindLagSpan; // M; the test has M + 1 degrees of freedom
  std::optional<int> kn{};     // truncation limit; select_kn() when unset
  double kn_rel_tol = 0.05;
  double pinv_rel_tol = 1e-10;
  MomentSource covariance_source = MomentSource::GaussianClosure;
  bool imag_diagnostic = false; // also evaluate the statistic on the imaginary part
};

void validate(const DetectorConfig& cfg);

struct GaussianityDecision {
  double statistic = 0.0;
  double threshold = 0.0;
  int dof = 0;
  Verdict verdict = Verdict::MultiCarrierOfdm;
  CumulantVector cumulants;
  double covariance_condition = 0.0; // max/min retained eigenvalue; 0 if none retained
  int kn = 0;
  std::size_t n_samples = 0;
  std::optional<double> imag_statistic; // diagnostic only, never affects the verdict
};

/// Pseudo-inverse of a symmetric matrix through its eigendecomposition.
/// Eigenvalues with |e| < rel_tol * max|e| are dropped. With project_psd the
/// negative eigenvalues are dropped too, so the result is positive
/// semidefinite. Throws ConfigError for non-square or visibly asymmetric input.
Eigen::MatrixXd pinv_symmetric(const Eigen::MatrixXd& a, double rel_tol,
                               bool project_psd = false, double* condition = nullptr);

/// c' * cov^+ * c with the PSD-projected pseudo-inverse; always >= 0.
double gaussianity_statistic(const CumulantVector& c, const CovarianceEstimate& cov,
                             double pinv_rel_tol = 1e-10, double* condition = nullptr);

/// statistic > threshold rejects Gaussianity; a tie keeps H0.
Verdict decide(double statistic, double threshold);

/// Runs the test on an already extracted real series (it is demeaned here).
GaussianityDecision identify_series(std::span<const double> series, const DetectorConfig& cfg);

/// Runs the test on the real part of a complex baseband record.
GaussianityDecision identify(const SampledSignal& sig, const DetectorConfig& cfg);

/// One-line JSON record: statistic, threshold, dof, verdict, condition, kn, n.
std::string to_record_line(const GaussianityDecision& d);

} // namespace ofdmid
