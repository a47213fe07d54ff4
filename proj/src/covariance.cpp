/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/covariance.hpp"

#include "ofdmid/error.hpp"
#include "ofdmid/hos.hpp"
#include "ofdmid/log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <utility>

namespace ofdmid {
namespace {

using Pairing = std::vector<std::pair<int, int>>;

// All perfect matchings of {0, ..., k-1}.
std::vector<Pairing> pairings(int k)
{
  if (k == 0)
    return {Pairing{}};
  std::vector<Pairing> out;
  for (int j = 1; j < k; ++j) {
    std::vector<int> rest;
    for (int i = 1; i < k; ++i)
      if (i != j)
        rest.push_back(i);
    for (const auto& sub : pairings(k - 2)) {
      Pairing p{{0, j}};
      for (const auto& [a, b] : sub)
        p.emplace_back(rest[static_cast<std::size_t>(a)], rest[static_cast<std::size_t>(b)]);
      out.push_back(std::move(p));
    }
  }
  return out;
}

const std::vector<Pairing>& pairings_of_order(int k)
{
  static const std::array<std::vector<Pairing>, 5> table = {
      pairings(0), pairings(2), pairings(4), pairings(6), pairings(8)};
  return table[static_cast<std::size_t>(k / 2)];
}

void check_range(const MomentModel& mom, int lambda, int beta, int kn)
{
  if (lambda < 0 || beta < 0 || kn < 0)
    throw ConfigError("covariance lags and truncation limit must be >= 0");
  if (static_cast<std::size_t>(kn + std::max(lambda, beta)) >= mom.length())
    throw ConfigError("truncation limit plus lag must stay below the record length");
}

// (1/N) sum_{tau=-K..K} [ moment(lags(tau)) - correction ]
template <class LagFn>
double lag_sum(const MomentModel& mom, int kn, double correction, LagFn&& lags_at)
{
  double acc = 0.0;
  for (int tau = -kn; tau <= kn; ++tau) {
    const auto lags = lags_at(tau);
    acc += mom.moment(std::span<const int>(lags.data(), lags.size())) - correction;
  }
  return acc / static_cast<double>(mom.length());
}

double m2(const MomentModel& mom, int u) { return mom.moment({u}); }
double m4diag(const MomentModel& mom, int l) { return mom.moment({l, l, 0}); }

// cov{m2(u), m2(v)}
double cov_m2_m2(const MomentModel& mom, int u, int v, int kn)
{
  return lag_sum(mom, kn, m2(mom, u) * m2(mom, v),
                 [&](int tau) { return std::array<int, 3>{u, tau, tau + v}; });
}

// cov{m4(l,l,0), m2(v)}
double cov_m4_m2(const MomentModel& mom, int l, int v, int kn)
{
  return lag_sum(mom, kn, m4diag(mom, l) * m2(mom, v),
                 [&](int tau) { return std::array<int, 5>{l, l, 0, tau, tau + v}; });
}

// One side of the cross terms: the three covariances between m4(a,a,0) and
// the products m2(b)m2(b), m2(b)m2(-b), m2(0)m2(0).
double cross_half(const MomentModel& mom, int a, int b, int kn)
{
  const double omega = cov_m4_m2(mom, a, b, kn);
  const double phi = cov_m4_m2(mom, a, -b, kn);
  const double psi = cov_m4_m2(mom, a, 0, kn);
  return omega * (2.0 * m2(mom, b) + m2(mom, -b)) + phi * m2(mom, b) + 2.0 * psi * m2(mom, 0);
}

} // namespace

std::string to_string(MomentSource s)
{
  return s == MomentSource::Sample ? "sample" : "gaussian";
}

MomentSource parse_moment_source(const std::string& text)
{
  if (text == "sample") return MomentSource::Sample;
  if (text == "gaussian") return MomentSource::GaussianClosure;
  throw ConfigError("unknown covariance source '" + text + "' (expected sample|gaussian)");
}

SampleMoments::SampleMoments(std::span<const double> y) : y_(y)
{
  check_series(y);
}

double SampleMoments::moment(std::span<const int> lags) const
{
  return moment_est(y_, lags);
}

GaussianClosureMoments::GaussianClosureMoments(std::span<const double> y, int max_distance)
    : n_(y.size())
{
  check_series(y);
  const int dmax = std::min<int>(max_distance, static_cast<int>(y.size()) - 1);
  r_.resize(static_cast<std::size_t>(std::max(dmax, 0)) + 1);
  for (int d = 0; d <= dmax; ++d)
    r_[static_cast<std::size_t>(d)] = autocorr_biased(y, d);
}

double GaussianClosureMoments::moment(std::span<const int> lags) const
{
  const int k = static_cast<int>(lags.size()) + 1;
  if (k % 2 != 0)
    return 0.0;
  if (k > 8)
    throw ConfigError("Gaussian closure supports moment orders up to 8");

  std::array<int, 8> idx{};
  int lo = 0, hi = 0;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    idx[i + 1] = lags[i];
    lo = std::min(lo, lags[i]);
    hi = std::max(hi, lags[i]);
  }
  const auto span = static_cast<std::size_t>(hi - lo);
  if (span >= n_)
    return 0.0;
  const double count = static_cast<double>(n_ - span);

  double total = 0.0;
  for (const auto& p : pairings_of_order(k)) {
    double prod = 1.0;
    for (const auto& [a, b] : p) {
      const auto d = static_cast<std::size_t>(std::abs(idx[static_cast<std::size_t>(a)] -
                                                       idx[static_cast<std::size_t>(b)]));
      if (d >= r_.size())
        throw ConfigError("index distance " + std::to_string(d) +
                          " exceeds the tabulated autocorrelation range");
      prod *= r_[d];
    }
    total += prod;
  }
  return total * count / static_cast<double>(n_);
}

CovarianceTerms covariance_terms(const MomentModel& mom, int lambda, int beta, int kn)
{
  check_range(mom, lambda, beta, kn);
  CovarianceTerms t;
  t.omega = cov_m4_m2(mom, lambda, beta, kn);
  t.phi = cov_m4_m2(mom, lambda, -beta, kn);
  t.psi = cov_m4_m2(mom, lambda, 0, kn);
  const std::array<int, 3> us{lambda, -lambda, 0};
  const std::array<int, 3> vs{beta, -beta, 0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      t.m2_cov[i][j] = cov_m2_m2(mom, us[i], vs[j], kn);
  t.gamma = t.m2_cov[0][0];
  t.lambda = t.m2_cov[0][1];
  t.theta = t.m2_cov[0][2];
  t.delta = t.m2_cov[1][1];
  t.upsilon = cov_m2_m2(mom, lambda, beta, kn);
  return t;
}

double cov_c1(const MomentModel& mom, int lambda, int beta, int kn)
{
  check_range(mom, lambda, beta, kn);
  return lag_sum(mom, kn, m4diag(mom, lambda) * m4diag(mom, beta), [&](int tau) {
    return std::array<int, 7>{lambda, lambda, 0, tau, tau + beta, tau + beta, tau};
  });
}

double cov_c2(const MomentModel& mom, int lambda, int beta, int kn)
{
  check_range(mom, lambda, beta, kn);
  return -(cross_half(mom, lambda, beta, kn) + cross_half(mom, beta, lambda, kn));
}

double cov_c3(const MomentModel& mom, int lambda, int beta, int kn)
{
  check_range(mom, lambda, beta, kn);
  const auto t = covariance_terms(mom, lambda, beta, kn);
  // Factor index 0 = +lag, 1 = -lag, 2 = zero lag, on each side.
  const std::array<double, 3> mu_l{m2(mom, lambda), m2(mom, -lambda), m2(mom, 0)};
  const std::array<double, 3> mu_b{m2(mom, beta), m2(mom, -beta), m2(mom, 0)};
  using Product = std::pair<std::size_t, std::size_t>;
  // c4(l) subtracts m2(l)m2(l), m2(l)m2(-l) and m2(0)m2(0).
  const std::array<Product, 3> products{Product{0, 0}, Product{0, 1}, Product{2, 2}};

  const auto& c = t.m2_cov;
  double total = 0.0;
  for (const auto& [a, b] : products) {
    for (const auto& [cc, d] : products) {
      total += mu_l[a] * mu_b[cc] * c[b][d] + mu_l[a] * mu_b[d] * c[b][cc] +
               mu_l[b] * mu_b[cc] * c[a][d] + mu_l[b] * mu_b[d] * c[a][cc] +
               c[a][cc] * c[b][d] + c[a][d] * c[b][cc];
    }
  }
  return total;
}

double cov_c1(std::span<const double> y, int lambda, int beta, int kn)
{
  return cov_c1(SampleMoments(y), lambda, beta, kn);
}

double cov_c2(std::span<const double> y, int lambda, int beta, int kn)
{
  return cov_c2(SampleMoments(y), lambda, beta, kn);
}

double cov_c3(std::span<const double> y, int lambda, int beta, int kn)
{
  return cov_c3(SampleMoments(y), lambda, beta, kn);
}

CovarianceEstimate covariance_matrix(std::span<const double> y, int max_lag, int kn,
                                     MomentSource source)
{
  check_series(y);
  if (max_lag < 0 || kn < 0)
    throw ConfigError("max_lag and kn must be >= 0");
  if (static_cast<std::size_t>(max_lag + kn) >= y.size())
    throw ConfigError("max_lag + kn must be smaller than the record length");

  std::unique_ptr<MomentModel> mom;
  if (source == MomentSource::Sample)
    mom = std::make_unique<SampleMoments>(y);
  else
    mom = std::make_unique<GaussianClosureMoments>(y, kn + 2 * max_lag + 1);

  const auto dim = static_cast<Eigen::Index>(max_lag) + 1;
  CovarianceEstimate out;
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  out.kn = kn;
  out.n = y.size();
  out.source = source;
  for (int l = 0; l <= max_lag; ++l) {
    for (int b = 0; b <= l; ++b) {
      const double v = cov_c1(*mom, l, b, kn) + cov_c2(*mom, l, b, kn) + cov_c3(*mom, l, b, kn);
      out.matrix(l, b) = v;
      out.matrix(b, l) = v;
    }
  }
  return out;
}

int select_kn(std::span<const double> y, int max_lag, double rel_tol, int cap)
{
  check_series(y);
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw ConfigError("rel_tol must lie in (0, 1)");
  if (cap <= 0)
    cap = 4 * (max_lag + 1);
  const int n = static_cast<int>(y.size());
  const int upper = std::min(cap, n / 10);

  const double r0 = autocorr_biased(y, 0);
  int base = upper;
  if (r0 > 0.0) {
    const double thr = rel_tol * r0;
    int run = 0;
    // Scan until four consecutive lags sit below the threshold; anything past
    // the cap would be clamped anyway.
    for (int tau = 1; tau < n && tau <= upper + 4; ++tau) {
      if (std::abs(autocorr_biased(y, tau)) < thr) {
        if (++run == 4) {
          base = tau - 3 + 1;
          break;
        }
      } else {
        run = 0;
      }
    }
  }
  int kn = std::max(base, max_lag + 1);
  kn = std::min(kn, upper);
  if (kn < max_lag + 1)
    warn("truncation limit " + std::to_string(kn) + " is below max_lag + 1 for a record of " +
         std::to_string(n) + " samples");
  return std::max(kn, 0);
}

} // namespace ofdmid
