/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <array>
#include <initializer_list>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

// Covariance of the diagonal-lag cumulant vector,
//
//   cov{c4(l,l,0), c4(b,b,0)} = c1 + c2 + c3,
//
// where c1 is the covariance of the two fourth-order moments, c2 collects the
// fourth-by-second-order cross terms and c3 the second-by-second-order terms.
// Every covariance of moment estimates is approximated by the truncated lag sum
//
//   cov{m_a, m_b} ~ (1/N) sum_{tau=-K..K} [ m_{a+b}(..., tau, ...) - m_a m_b ].
//
// The moments inside those sums come from a MomentModel: either the sample
// moments of the record, or their Gaussian (Isserlis) closure built from the
// sample autocorrelation.

namespace ofdmid {

enum class MomentSource { Sample, GaussianClosure };

std::string to_string(MomentSource s);
MomentSource parse_moment_source(const std::string& text);

/// Supplies m_k(l_1, ..., l_{k-1}) for the covariance sums.
class MomentModel {
public:
  virtual ~MomentModel() = default;
  virtual double moment(std::span<const int> lags) const = 0;
  virtual std::size_t length() const = 0;

  double moment(std::initializer_list<int> lags) const
  {
    return moment(std::span<const int>(lags.begin(), lags.size()));
  }
};

/// Biased sample moments of a (demeaned) series. Holds a view, not a copy.
class SampleMoments final : public MomentModel {
public:
  explicit SampleMoments(std::span<const double> y);
  using MomentModel::moment;
  double moment(std::span<const int> lags) const override;
  std::size_t length() const override { return y_.size(); }

private:
  std::span<const double> y_;
};

/// Moments a zero-mean Gaussian process with the record's sample
/// autocorrelation would have: the sum over all pairings of the index set of
/// products of autocorrelations, scaled by the same (valid count)/N factor as
/// the sample estimator. Odd orders are zero. Supports orders up to 8.
class GaussianClosureMoments final : public MomentModel {
public:
  /// Autocorrelations are tabulated for |index difference| <= max_distance.
  GaussianClosureMoments(std::span<const double> y, int max_distance);
  using MomentModel::moment;
  double moment(std::span<const int> lags) const override;
  std::size_t length() const override { return n_; }

private:
  std::vector<double> r_;
  std::size_t n_;
};

/// Named partial sums for one (lambda, beta) orientation.
///
/// omega/phi/psi: cov{m4(l,l,0), m2(v)} for v = beta, -beta, 0.
/// gamma, lambda, theta, delta, upsilon: cov{m2(u), m2(v)} for
/// (u,v) = (l,b), (l,-b), (l,0), (-l,-b), (l,b).
/// m2_cov[i][j]: cov{m2(u_i), m2(v_j)} with u = (l, -l, 0), v = (b, -b, 0).
struct CovarianceTerms {
  double omega = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double upsilon = 0.0;
  std::array<std::array<double, 3>, 3> m2_cov{};
};

CovarianceTerms covariance_terms(const MomentModel& mom, int lambda, int beta, int kn);

/// cov{m4(l,l,0), m4(b,b,0)}.
double cov_c1(const MomentModel& mom, int lambda, int beta, int kn);

/// Signed cross-term contribution: minus the six covariances between one
/// side's fourth-order moment and the other side's products of second-order
/// moments, each expanded as cov{a, bc} = E{b} cov{a,c} + E{c} cov{a,b}.
double cov_c2(const MomentModel& mom, int lambda, int beta, int kn);

/// Sum of the nine covariances between products of second-order moments,
/// each expanded with the Gaussian product rule
///   cov{ab,cd} = E{a}E{c}cov{b,d} + E{a}E{d}cov{b,c} + E{b}E{c}cov{a,d}
///              + E{b}E{d}cov{a,c} + cov{a,c}cov{b,d} + cov{a,d}cov{b,c}.
double cov_c3(const MomentModel& mom, int lambda, int beta, int kn);

double cov_c1(std::span<const double> y, int lambda, int beta, int kn);
double cov_c2(std::span<const double> y, int lambda, int beta, int kn);
double cov_c3(std::span<const double> y, int lambda, int beta, int kn);

struct CovarianceEstimate {
  Eigen::MatrixXd matrix;
  int kn = 0;
  std::size_t n = 0;
  MomentSource source = MomentSource::Sample;
};

/// Entries (l, b), 0 <= b <= l <= max_lag, computed as c1 + c2 + c3 and
/// mirrored. Requires max_lag + kn < N.
CovarianceEstimate covariance_matrix(std::span<const double> y, int max_lag, int kn,
                                     MomentSource source = MomentSource::Sample);

/// Truncation limit for the lag sums: one past the first lag tau at which
/// |c2(tau + j)| < rel_tol * c2(0) for j = 0..3, then raised to at least
/// max_lag + 1 and capped at min(cap, N / 10). cap <= 0 means 4 * (max_lag + 1).
int select_kn(std::span<const double> y, int max_lag, double rel_tol = 0.05, int cap = 0);

} // namespace ofdmid
