//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "polycomplex/error.hpp"

namespace polycomplex {

namespace {

void check_pair(const Eigen::VectorXd &pred, const Eigen::VectorXd &truth) {
  if (pred.size() != truth.size())
    throw Error(ErrorCode::LengthMismatch, "prediction and truth lengths differ");
  if (pred.size() == 0)
    throw Error(ErrorCode::Empty, "metric over an empty vector");
}

}  // namespace

double mae(const Eigen::VectorXd &pred, const Eigen::VectorXd &truth) {
  check_pair(pred, truth);
  return (pred - truth).cwiseAbs().mean();
}

double rmse(const Eigen::VectorXd &pred, const Eigen::VectorXd &truth) {
  check_pair(pred, truth);
  return std::sqrt((pred - truth).squaredNorm() / static_cast<double>(pred.size()));
}

double crps_gaussian(double mu, double sigma, double y) {
  if (!(sigma > 0.0))
    throw Error(ErrorCode::NonPositiveSigma, "CRPS needs sigma > 0");
  const double z = (y - mu) / sigma;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return sigma * (z * (2.0 * cdf - 1.0) + 2.0 * pdf - 1.0 / std::sqrt(std::numbers::pi));
}

double crps_gaussian(const Eigen::VectorXd &mu, const Eigen::VectorXd &sigma, const Eigen::VectorXd &y) {
  check_pair(mu, y);
  if (sigma.size() != y.size())
    throw Error(ErrorCode::LengthMismatch, "sigma and truth lengths differ");
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    total += crps_gaussian(mu[i], sigma[i], y[i]);
  return total / static_cast<double>(y.size());
}

double bootstrap_stderr(const std::vector<double> &values, int n_resamples, std::uint64_t seed) {
  if (values.size() < 2)
    throw Error(ErrorCode::TooFewValues, "bootstrap needs at least two values");
  if (n_resamples < 100)
    throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least 100 resamples");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    return 0.0;
  std::mt19937_64 rng(seed);
  const std::uint64_t n = values.size();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::vector<double> means(static_cast<std::size_t>(n_resamples));
  for (int r = 0; r < n_resamples; ++r) {
    double total = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t draw = rng();
      while (draw >= limit)
        draw = rng();
      total += values[draw % n];
    }
    means[static_cast<std::size_t>(r)] = total / static_cast<double>(n);
  }
  double mean = 0.0;
  for (double m : means)
    mean += m;
  mean /= n_resamples;
  double var = 0.0;
  for (double m : means)
    var += (m - mean) * (m - mean);
  return std::sqrt(var / n_resamples);
}

}  // namespace polycomplex
