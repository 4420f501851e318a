//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/kernels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include <spdlog/spdlog.h>

#include "polycomplex/error.hpp"

namespace polycomplex {

std::string_view to_string(KernelKind k) noexcept {
  switch (k) {
  case KernelKind::Tanimoto:
    return "tanimoto";
  case KernelKind::String:
    return "string";
  case KernelKind::WL:
    return "wl";
  }
  return "tanimoto";
}

KernelKind kernel_from_string(std::string_view name) {
  if (name == "tanimoto")
    return KernelKind::Tanimoto;
  if (name == "string")
    return KernelKind::String;
  if (name == "wl")
    return KernelKind::WL;
  throw Error(ErrorCode::ConfigError, "kernel must be tanimoto, string or wl; got '" + std::string(name) + "'");
}

namespace {

double tanimoto_from_products(double xy, double xx, double yy) {
  const double denom = xx + yy - xy;
  if (denom == 0.0)
    return 0.0;
  return xy / denom;
}

void check_sigma(double sigma2) {
  if (!(sigma2 > 0.0))
    throw Error(ErrorCode::InvalidArgument, "signal variance must be positive");
}

}  // namespace

double tanimoto(const Eigen::VectorXd &x, const Eigen::VectorXd &y, double sigma2) {
  if (x.size() != y.size())
    throw Error(ErrorCode::LengthMismatch, "tanimoto on vectors of length " + std::to_string(x.size()) + " and " +
                                               std::to_string(y.size()));
  check_sigma(sigma2);
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 && yy == 0.0) {
    spdlog::debug("tanimoto: both vectors are zero, returning 0");
    return 0.0;
  }
  return sigma2 * tanimoto_from_products(xy, xx, yy);
}

double string_kernel(std::string_view s, std::string_view t, double sigma2) {
  check_sigma(sigma2);
  std::array<double, 256> a{}, b{};
  for (unsigned char c : s)
    a[c] += 1.0;
  for (unsigned char c : t)
    b[c] += 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dot += a[i] * b[i];
  return sigma2 * dot;
}

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

WLHistogram wl_histogram(const MolecularGraph &graph, int iterations) {
  if (iterations < 0)
    throw Error(ErrorCode::InvalidArgument, "WL iterations must be non-negative");
  const auto adj = graph.adjacency();
  std::vector<std::uint64_t> labels(graph.atoms.size());
  WLHistogram hist;
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    std::string label = graph.atoms[i].symbol;
    if (graph.atoms[i].aromatic)
      std::transform(label.begin(), label.end(), label.begin(), [](unsigned char c) { return std::tolower(c); });
    labels[i] = fnv1a("0:" + label);
    hist[labels[i]] += 1.0;
  }
  for (int it = 1; it <= iterations; ++it) {
    std::vector<std::uint64_t> next(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::vector<std::uint64_t> neigh;
      for (std::size_t j : adj[i])
        neigh.push_back(labels[j]);
      std::sort(neigh.begin(), neigh.end());
      std::string key = std::to_string(it) + ":" + std::to_string(labels[i]) + "|";
      for (auto l : neigh)
        key += std::to_string(l) + ",";
      next[i] = fnv1a(key);
    }
    labels = std::move(next);
    for (auto l : labels)
      hist[l] += 1.0;
  }
  return hist;
}

double histogram_dot(const WLHistogram &a, const WLHistogram &b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

double wl_kernel(const MolecularGraph &g, const MolecularGraph &h, int iterations, double sigma2) {
  check_sigma(sigma2);
  return sigma2 * histogram_dot(wl_histogram(g, iterations), wl_histogram(h, iterations));
}

KernelMatrix gram_tanimoto(const Eigen::MatrixXd &X, double sigma2, double jitter) {
  check_sigma(sigma2);
  if (X.rows() < 1)
    throw Error(ErrorCode::EmptyBatch, "Gram matrix needs at least one item");
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  G.selfadjointView<Eigen::Lower>().rankUpdate(X);
  KernelMatrix out;
  out.values.resize(n, n);
  out.jitter = jitter;
  out.kernel = KernelKind::Tanimoto;
  out.signal_variance = sigma2;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = sigma2 * tanimoto_from_products(G(i, j), G(i, i), G(j, j));
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  out.values.diagonal().array() += jitter;
  return out;
}

Eigen::MatrixXd cross_gram_tanimoto(const Eigen::MatrixXd &Q, const Eigen::MatrixXd &X, double sigma2) {
  check_sigma(sigma2);
  if (Q.cols() != X.cols())
    throw Error(ErrorCode::LengthMismatch, "cross Gram on feature widths " + std::to_string(Q.cols()) + " and " +
                                               std::to_string(X.cols()));
  const Eigen::MatrixXd G = Q * X.transpose();
  const Eigen::VectorXd qq = Q.rowwise().squaredNorm();
  const Eigen::VectorXd xx = X.rowwise().squaredNorm();
  Eigen::MatrixXd K(Q.rows(), X.rows());
  for (Eigen::Index j = 0; j < X.rows(); ++j)
    for (Eigen::Index i = 0; i < Q.rows(); ++i)
      K(i, j) = sigma2 * tanimoto_from_products(G(i, j), qq[i], xx[j]);
  return K;
}

KernelMatrix gram_string(const std::vector<std::string> &items, double sigma2, double jitter) {
  check_sigma(sigma2);
  if (items.empty())
    throw Error(ErrorCode::EmptyBatch, "Gram matrix needs at least one item");
  const auto n = static_cast<Eigen::Index>(items.size());
  KernelMatrix out{Eigen::MatrixXd(n, n), jitter, KernelKind::String, sigma2};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i)
      out.values(i, j) = out.values(j, i) = string_kernel(items[i], items[j], sigma2);
  out.values.diagonal().array() += jitter;
  return out;
}

KernelMatrix gram_wl(const std::vector<MolecularGraph> &items, int iterations, double sigma2, double jitter) {
  check_sigma(sigma2);
  if (items.empty())
    throw Error(ErrorCode::EmptyBatch, "Gram matrix needs at least one item");
  std::vector<WLHistogram> hist;
  hist.reserve(items.size());
  for (const auto &g : items)
    hist.push_back(wl_histogram(g, iterations));
  const auto n = static_cast<Eigen::Index>(items.size());
  KernelMatrix out{Eigen::MatrixXd(n, n), jitter, KernelKind::WL, sigma2};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i)
      out.values(i, j) = out.values(j, i) = sigma2 * histogram_dot(hist[i], hist[j]);
  out.values.diagonal().array() += jitter;
  return out;
}

Eigen::MatrixXd normalize_kernel(const Eigen::MatrixXd &K) {
  Eigen::VectorXd d = K.diagonal();
  Eigen::MatrixXd out(K.rows(), K.cols());
  for (Eigen::Index j = 0; j < K.cols(); ++j)
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
      const double s = std::sqrt(d[i] * d[j]);
      out(i, j) = s > 0.0 ? K(i, j) / s : 0.0;
    }
  return out;
}

}  // namespace polycomplex
