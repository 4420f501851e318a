//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <spdlog/spdlog.h>

#include "polycomplex/error.hpp"

namespace polycomplex {

namespace {

constexpr std::array<double, 3> kJitterLadder{1e-6, 1e-4, 1e-2};

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

// LML for sigma_f^2 K1 + sigma_n^2 I given K1 = Q diag(lambda) Q^T and b = Q^T y.
struct SpectralObjective {
  Eigen::VectorXd lambda;
  Eigen::VectorXd b2;

  double operator()(double log_sf, double log_sn) const {
    const double sf = std::exp(log_sf);
    const double sn = std::exp(log_sn);
    double fit = 0.0, logdet = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      const double d = sf * lambda[i] + sn;
      fit += b2[i] / d;
      logdet += std::log(d);
    }
    return -0.5 * fit - 0.5 * logdet - 0.5 * static_cast<double>(lambda.size()) * kLog2Pi;
  }
};

template <class F>
double golden_section(F &&f, double lo, double hi, int iterations) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

bool row_key_less(const Eigen::MatrixXd &K1, const Eigen::VectorXd &y,
                  const std::vector<std::vector<double>> &sorted_rows, Eigen::Index a, Eigen::Index b) {
  if (y[a] != y[b])
    return y[a] < y[b];
  if (K1(a, a) != K1(b, b))
    return K1(a, a) < K1(b, b);
  return sorted_rows[static_cast<std::size_t>(a)] < sorted_rows[static_cast<std::size_t>(b)];
}

}  // namespace

double log_marginal_likelihood(const Eigen::MatrixXd &K, const Eigen::VectorXd &y) {
  if (K.rows() != y.size() || K.cols() != y.size())
    throw Error(ErrorCode::LengthMismatch, "covariance and targets disagree in size");
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::FactorizationFailed, "covariance is not positive definite");
  const Eigen::VectorXd alpha = llt.solve(y);
  const Eigen::MatrixXd &L = llt.matrixLLT();
  const double logdet = 2.0 * L.diagonal().array().log().sum();
  return -0.5 * y.dot(alpha) - 0.5 * logdet - 0.5 * static_cast<double>(y.size()) * kLog2Pi;
}

GPModel GPModel::fit(const Eigen::MatrixXd &K1_in, const Eigen::VectorXd &y_in, const GPOptions &options) {
  const Eigen::Index n = y_in.size();
  if (K1_in.rows() != n || K1_in.cols() != n)
    throw Error(ErrorCode::LengthMismatch, "kernel matrix does not match the number of targets");
  if (n < 2)
    throw Error(ErrorCode::TooFewValues, "GP fit needs at least two training points");
  if (options.n_epochs < 0)
    throw Error(ErrorCode::ConfigError, "n_epochs must be non-negative");
  if (!y_in.allFinite() || !K1_in.allFinite())
    throw Error(ErrorCode::InvalidArgument, "non-finite training data");

  GPModel model;
  // canonical training order
  std::vector<std::vector<double>> sorted_rows(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto &row = sorted_rows[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
      row[static_cast<std::size_t>(j)] = K1_in(i, j);
    std::sort(row.begin(), row.end());
  }
  model.order_.resize(static_cast<std::size_t>(n));
  std::iota(model.order_.begin(), model.order_.end(), 0);
  std::stable_sort(model.order_.begin(), model.order_.end(), [&](Eigen::Index a, Eigen::Index b) {
    return row_key_less(K1_in, y_in, sorted_rows, a, b);
  });
  model.K1_.resize(n, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src_i = model.order_[static_cast<std::size_t>(i)];
    y[i] = y_in[src_i];
    for (Eigen::Index j = 0; j < n; ++j)
      model.K1_(i, j) = K1_in(src_i, model.order_[static_cast<std::size_t>(j)]);
  }
  model.K1_ = 0.5 * (model.K1_ + model.K1_.transpose()).eval();

  model.mean_ = options.center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.mean_;
  const double var = yc.squaredNorm() / static_cast<double>(n);

  GPHyper theta = options.initial;
  if (!(theta.signal_variance > 0.0))
    throw Error(ErrorCode::ConfigError, "initial signal variance must be positive");
  if (options.fixed_noise)
    theta.noise_variance = *options.fixed_noise;
  theta.noise_variance = std::max(theta.noise_variance, kNoiseFloor);

  if (var == 0.0) {
    spdlog::warn("GP targets have zero variance; noise fixed at the floor");
    theta.noise_variance = kNoiseFloor;
  } else if (options.n_epochs > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.K1_);
    if (eig.info() != Eigen::Success)
      throw Error(ErrorCode::FactorizationFailed, "eigen-decomposition of the training kernel failed");
    SpectralObjective objective{eig.eigenvalues().cwiseMax(0.0), (eig.eigenvectors().transpose() * yc).array().square()};

    const std::array<double, 2> lo{std::log(1e-3 * var), std::log(std::max(kNoiseFloor, 1e-6 * var))};
    const std::array<double, 2> hi{std::log(1e3 * var), std::log(std::max(kNoiseFloor, 10.0 * var))};
    std::array<double, 2> x{std::log(theta.signal_variance), std::log(theta.noise_variance)};
    double best = objective(x[0], x[1]);
    const int coords = options.fixed_noise ? 1 : 2;
    const int grid = std::max(options.grid_points, 3);

    for (int epoch = 0; epoch < options.n_epochs; ++epoch) {
      for (int c = 0; c < coords; ++c) {
        if (hi[c] <= lo[c])
          continue;
        const double half = 0.5 * (hi[c] - lo[c]) / std::pow(2.0, epoch);
        const double centre = std::clamp(x[c], lo[c], hi[c]);
        const double a = std::max(lo[c], centre - half);
        const double b = std::min(hi[c], centre + half);
        auto eval = [&](double v) {
          auto probe = x;
          probe[c] = v;
          return objective(probe[0], probe[1]);
        };
        const double step = (b - a) / (grid - 1);
        int arg = 0;
        double arg_val = -std::numeric_limits<double>::infinity();
        for (int g = 0; g < grid; ++g) {
          const double v = eval(a + step * g);
          if (v > arg_val) {
            arg_val = v;
            arg = g;
          }
        }
        double cand = a + step * arg;
        const double refined = golden_section(eval, std::max(a, cand - step), std::min(b, cand + step),
                                              options.golden_iterations);
        if (eval(refined) > arg_val) {
          cand = refined;
          arg_val = eval(refined);
        }
        if (arg_val > best) {
          best = arg_val;
          x[c] = cand;
        }
      }
      model.history_.push_back(best);
    }
    theta.signal_variance = std::exp(x[0]);
    theta.noise_variance = std::max(kNoiseFloor, std::exp(x[1]));
  }
  model.hyper_ = theta;

  Eigen::MatrixXd K = theta.signal_variance * model.K1_;
  K.diagonal().array() += theta.noise_variance;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  double jitter = 0.0;
  for (std::size_t step = 0; llt.info() != Eigen::Success; ++step) {
    if (step >= kJitterLadder.size())
      throw Error(ErrorCode::FactorizationFailed, "Cholesky failed even with jitter 1e-2");
    jitter = kJitterLadder[step];
    spdlog::warn("Cholesky failed; retrying with jitter {}", jitter);
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter;
    llt.compute(Kj);
  }
  model.jitter_ = jitter;
  model.L_ = llt.matrixL();
  model.alpha_ = llt.solve(yc);
  const double logdet = 2.0 * model.L_.diagonal().array().log().sum();
  model.lml_ = -0.5 * yc.dot(model.alpha_) - 0.5 * logdet - 0.5 * static_cast<double>(n) * kLog2Pi;
  return model;
}

Eigen::MatrixXd GPModel::covariance() const {
  Eigen::MatrixXd K = hyper_.signal_variance * K1_;
  K.diagonal().array() += hyper_.noise_variance + jitter_;
  return K;
}

GPPrediction GPModel::predict(const Eigen::MatrixXd &K1_cross, const Eigen::VectorXd &k1_diag) const {
  const auto n = static_cast<Eigen::Index>(order_.size());
  if (K1_cross.cols() != n || K1_cross.rows() != k1_diag.size())
    throw Error(ErrorCode::LengthMismatch, "cross kernel shape does not match the model");
  const Eigen::Index m = K1_cross.rows();
  Eigen::MatrixXd ks(n, m);  // training x queries, canonical order
  for (Eigen::Index i = 0; i < n; ++i)
    ks.row(i) = hyper_.signal_variance * K1_cross.col(order_[static_cast<std::size_t>(i)]).transpose();
  GPPrediction out;
  out.mean = (ks.transpose() * alpha_).array() + mean_;
  const Eigen::MatrixXd v = L_.triangularView<Eigen::Lower>().solve(ks);
  out.variance.resize(m);
  for (Eigen::Index q = 0; q < m; ++q) {
    double var = hyper_.signal_variance * k1_diag[q] + hyper_.noise_variance - v.col(q).squaredNorm();
    if (var < 0.0) {
      var = 0.0;
      ++out.clamp_events;
    }
    out.variance[q] = var;
  }
  return out;
}

}  // namespace polycomplex
