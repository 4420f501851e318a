//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace polycomplex {

inline constexpr double kNoiseFloor = 1e-6;

struct GPHyper {
  double signal_variance = 1.0;  // sigma_f^2
  double noise_variance = 0.1;   // sigma_n^2
};

struct GPOptions {
  int n_epochs = 5;
  GPHyper initial;
  bool center_targets = true;
  std::optional<double> fixed_noise;  // pins sigma_n^2 (clamped to the floor)
  int grid_points = 21;
  int golden_iterations = 40;
};

struct GPPrediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
  int clamp_events = 0;
};

/// Exact GP regression on a precomputed unit-scale kernel. The covariance is
/// sigma_f^2 * K1 + sigma_n^2 I. Training rows are put in a canonical order
/// so results do not depend on the order they were supplied in.
class GPModel {
public:
  /// Throws LengthMismatch, TooFewValues or FactorizationFailed.
  static GPModel fit(const Eigen::MatrixXd &K1, const Eigen::VectorXd &y, const GPOptions &options = {});

  /// `K1_cross` is (queries x training rows, in the caller's training order);
  /// `k1_diag` holds K1(q, q) for each query.
  GPPrediction predict(const Eigen::MatrixXd &K1_cross, const Eigen::VectorXd &k1_diag) const;

  double log_marginal_likelihood() const noexcept { return lml_; }
  const GPHyper &hyper() const noexcept { return hyper_; }
  const std::vector<double> &lml_history() const noexcept { return history_; }
  double jitter() const noexcept { return jitter_; }
  double target_mean() const noexcept { return mean_; }
  const Eigen::MatrixXd &cholesky_factor() const noexcept { return L_; }
  /// sigma_f^2 K1 + (sigma_n^2 + jitter) I in canonical order.
  Eigen::MatrixXd covariance() const;

private:
  std::vector<Eigen::Index> order_;  // canonical position -> caller index
  Eigen::MatrixXd K1_;
  Eigen::MatrixXd L_;
  Eigen::VectorXd alpha_;
  GPHyper hyper_;
  double jitter_ = 0.0;
  double mean_ = 0.0;
  double lml_ = 0.0;
  std::vector<double> history_;
};

/// Closed-form log marginal likelihood of y under N(0, K).
double log_marginal_likelihood(const Eigen::MatrixXd &K, const Eigen::VectorXd &y);

}  // namespace polycomplex
