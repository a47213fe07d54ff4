/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/detector.hpp"

#include "ofdmid/chi2.hpp"
#include "ofdmid/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace ofdmid {

std::string to_string(Verdict v)
{
  return v == Verdict::MultiCarrierOfdm ? "MultiCarrierOFDM" : "SingleCarrier";
}

void validate(const DetectorConfig& cfg)
{
  if (!(cfg.significance > 0.0 && cfg.significance < 1.0))
    throw ConfigError("significance must lie in (0, 1)");
  if (cfg.max_lag < 0)
    throw ConfigError("max_lag must be >= 0");
  if (cfg.kn && *cfg.kn < 0)
    throw ConfigError("kn must be >= 0");
  if (!(cfg.kn_rel_tol > 0.0 && cfg.kn_rel_tol < 1.0))
    throw ConfigError("kn_rel_tol must lie in (0, 1)");
  if (!(cfg.pinv_rel_tol > 0.0 && cfg.pinv_rel_tol < 1.0))
    throw ConfigError("pinv_rel_tol must lie in (0, 1)");
}

Eigen::MatrixXd pinv_symmetric(const Eigen::MatrixXd& a, double rel_tol, bool project_psd,
                               double* condition)
{
  if (a.rows() != a.cols())
    throw ConfigError("pinv_symmetric needs a square matrix");
  const double scale = a.cwiseAbs().maxCoeff();
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-6 * std::max(scale, 1e-300))
    throw ConfigError("pinv_symmetric needs a symmetric matrix");

  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double emax = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  const double cutoff = rel_tol * emax;

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  double kept_max = 0.0;
  double kept_min = 0.0;
  bool any = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double e = ev(i);
    if (std::abs(e) < cutoff || e == 0.0 || (project_psd && e < 0.0))
      continue;
    inv(i) = 1.0 / e;
    const double m = std::abs(e);
    kept_max = any ? std::max(kept_max, m) : m;
    kept_min = any ? std::min(kept_min, m) : m;
    any = true;
  }
  if (condition)
    *condition = any ? kept_max / kept_min : 0.0;
  const Eigen::MatrixXd& v = eig.eigenvectors();
  return v * inv.asDiagonal() * v.transpose();
}

double gaussianity_statistic(const CumulantVector& c, const CovarianceEstimate& cov,
                             double pinv_rel_tol, double* condition)
{
  const auto dim = static_cast<Eigen::Index>(c.size());
  if (cov.matrix.rows() != dim || cov.matrix.cols() != dim)
    throw ConfigError("cumulant vector and covariance dimensions differ");
  const Eigen::MatrixXd p = pinv_symmetric(cov.matrix, pinv_rel_tol, true, condition);
  const Eigen::Map<const Eigen::VectorXd> v(c.values.data(), dim);
  const double d = v.dot(p * v);
  if (!std::isfinite(d))
    throw NumericalError("test statistic is not finite");
  return std::max(d, 0.0);
}

Verdict decide(double statistic, double threshold)
{
  return statistic > threshold ? Verdict::SingleCarrier : Verdict::MultiCarrierOfdm;
}

namespace {

struct StatisticParts {
  CumulantVector cumulants;
  double statistic = 0.0;
  double condition = 0.0;
  int kn = 0;
};

StatisticParts evaluate(std::span<const double> series, const DetectorConfig& cfg)
{
  check_series(series);
  const auto y = demean(series);
  const int m = cfg.max_lag;
  if (static_cast<std::size_t>(m) >= y.size())
    throw ConfigError("max_lag must be smaller than the record length");
  StatisticParts out;
  out.kn = cfg.kn ? *cfg.kn : select_kn(y, m, cfg.kn_rel_tol);
  if (static_cast<std::size_t>(m + out.kn) >= y.size())
    throw ConfigError("record of " + std::to_string(y.size()) +
                      " samples is too short for max_lag + kn = " + std::to_string(m + out.kn));
  out.cumulants = cumulant_vector(y, m);
  const auto cov = covariance_matrix(y, m, out.kn, cfg.covariance_source);
  out.statistic = gaussianity_statistic(out.cumulants, cov, cfg.pinv_rel_tol, &out.condition);
  return out;
}

} // namespace

GaussianityDecision identify_series(std::span<const double> series, const DetectorConfig& cfg)
{
  validate(cfg);
  auto parts = evaluate(series, cfg);
  GaussianityDecision d;
  d.statistic = parts.statistic;
  d.dof = cfg.max_lag + 1;
  d.threshold = chi2_quantile(d.dof, cfg.significance);
  d.verdict = decide(d.statistic, d.threshold);
  d.cumulants = std::move(parts.cumulants);
  d.covariance_condition = parts.condition;
  d.kn = parts.kn;
  d.n_samples = series.size();
  return d;
}

GaussianityDecision identify(const SampledSignal& sig, const DetectorConfig& cfg)
{
  validate(sig);
  auto d = identify_series(real_part(sig.samples), cfg);
  if (cfg.imag_diagnostic)
    d.imag_statistic = evaluate(imag_part(sig.samples), cfg).statistic;
  return d;
}

std::string to_record_line(const GaussianityDecision& d)
{
  nlohmann::ordered_json j;
  j["statistic"] = d.statistic;
  j["threshold"] = d.threshold;
  j["dof"] = d.dof;
  j["verdict"] = to_string(d.verdict);
  j["condition"] = d.covariance_condition;
  j["kn"] = d.kn;
  j["n_samples"] = d.n_samples;
  if (d.imag_statistic)
    j["imag_statistic"] = *d.imag_statistic;
  return j.dump();
}

} // namespace ofdmid
