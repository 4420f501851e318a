//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/smiles.hpp"

namespace polycomplex {

enum class KernelKind { Tanimoto, String, WL };

std::string_view to_string(KernelKind k) noexcept;
KernelKind kernel_from_string(std::string_view name);

struct KernelMatrix {
  Eigen::MatrixXd values;
  double jitter = 0.0;
  KernelKind kernel = KernelKind::Tanimoto;
  double signal_variance = 1.0;
};

/// sigma2 * <x,y> / (|x|^2 + |y|^2 - <x,y>), accumulated sequentially so
/// trailing zero padding never changes the result. Two zero vectors give 0.
double tanimoto(const Eigen::VectorXd &x, const Eigen::VectorXd &y, double sigma2 = 1.0);

/// Bag-of-characters inner product.
double string_kernel(std::string_view s, std::string_view t, double sigma2 = 1.0);

using WLHistogram = std::map<std::uint64_t, double>;

/// Weisfeiler-Lehman subtree features summed over iterations 0..h. Node
/// labels start as element symbols (aromatic atoms lower-cased).
WLHistogram wl_histogram(const MolecularGraph &graph, int iterations);
double wl_kernel(const MolecularGraph &g, const MolecularGraph &h, int iterations, double sigma2 = 1.0);
double histogram_dot(const WLHistogram &a, const WLHistogram &b);

/// Tanimoto Gram matrix over the rows of X from the inner-product matrix.
KernelMatrix gram_tanimoto(const Eigen::MatrixXd &X, double sigma2 = 1.0, double jitter = 0.0);
/// Rows index Q, columns index X.
Eigen::MatrixXd cross_gram_tanimoto(const Eigen::MatrixXd &Q, const Eigen::MatrixXd &X, double sigma2 = 1.0);

KernelMatrix gram_string(const std::vector<std::string> &items, double sigma2 = 1.0, double jitter = 0.0);
KernelMatrix gram_wl(const std::vector<MolecularGraph> &items, int iterations, double sigma2 = 1.0,
                     double jitter = 0.0);

/// Rescales a linear kernel matrix to unit diagonal (cosine normalisation).
Eigen::MatrixXd normalize_kernel(const Eigen::MatrixXd &K);

}  // namespace polycomplex
