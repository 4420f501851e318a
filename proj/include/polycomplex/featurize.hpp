//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/atomic.hpp"
#include "polycomplex/polyatomic.hpp"

namespace polycomplex {

enum class Featurizer { Fast, Deep };

std::string_view to_string(Featurizer f) noexcept;
Featurizer featurizer_from_string(std::string_view name);

inline constexpr int kFastColumns = 10;
inline constexpr const char *kRowSchema = "cellrow/1";

struct FeatureConfig {
  Featurizer featurizer = Featurizer::Fast;
  int m_spec = 8;  // Hodge eigenvalues kept per row (deep only)

  int columns() const noexcept { return featurizer == Featurizer::Fast ? kFastColumns : kFastColumns + 3 + m_spec; }
  std::uint64_t hash() const noexcept;
};

struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::string schema = kRowSchema;
  Featurizer featurizer = Featurizer::Fast;
  std::uint64_t config_hash = 0;
};

/// One row per cell in canonical cell order:
///   [kind code, dim, radius, owner Z, neutron count (neutron rows only),
///    mean |x|, mean x_0 .. mean x_3]
/// Kind codes: proton 1, neutron 2, electron 3, atom 4.
FeatureMatrix fast_complex(const PolyatomicComplex &poly);
FeatureMatrix fast_complex(const AtomicComplex &atom);

/// Fast rows followed by [face count, coface count, link degree, top m_spec
/// eigenvalues of the Hodge Laplacian of the row's dimension, descending,
/// zero-filled].
FeatureMatrix deep_complex(const PolyatomicComplex &poly, int m_spec = 8);
FeatureMatrix deep_complex(const AtomicComplex &atom, int m_spec = 8);

FeatureMatrix featurize(const PolyatomicComplex &poly, const FeatureConfig &config);

/// Pads every matrix with trailing zero rows/columns to the batch maximum.
/// Throws EmptyBatch.
std::vector<FeatureMatrix> zero_pad(const std::vector<FeatureMatrix> &batch);

/// Row-major flattening.
Eigen::VectorXd flatten(const FeatureMatrix &m);
Eigen::VectorXd flatten(const Eigen::MatrixXd &m);

/// Feature cache: CSV lines "id,rows,cols,v_0,...,v_{rows*cols-1}" with
/// values in row-major order, printed with round-trip precision.
struct CachedFeatures {
  std::string id;
  Eigen::MatrixXd values;
};
void write_feature_cache(const std::string &path, const std::vector<CachedFeatures> &records);
std::vector<CachedFeatures> read_feature_cache(const std::string &path);

}  // namespace polycomplex
