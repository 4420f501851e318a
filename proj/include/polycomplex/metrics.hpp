//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace polycomplex {

/// Throw LengthMismatch or Empty.
double mae(const Eigen::VectorXd &pred, const Eigen::VectorXd &truth);
double rmse(const Eigen::VectorXd &pred, const Eigen::VectorXd &truth);

/// Closed-form CRPS of N(mu, sigma^2) against y:
///   sigma [z (2 Phi(z) - 1) + 2 phi(z) - 1/sqrt(pi)],  z = (y - mu) / sigma.
/// Throws NonPositiveSigma.
double crps_gaussian(double mu, double sigma, double y);
/// Mean CRPS over a batch.
double crps_gaussian(const Eigen::VectorXd &mu, const Eigen::VectorXd &sigma, const Eigen::VectorXd &y);

/// Standard deviation of `n_resamples` bootstrap means. Throws TooFewValues
/// for fewer than two values; n_resamples must be at least 100.
double bootstrap_stderr(const std::vector<double> &values, int n_resamples, std::uint64_t seed);

}  // namespace polycomplex
