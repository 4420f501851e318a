//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "polycomplex/config.hpp"
#include "polycomplex/dataset.hpp"
#include "polycomplex/featurize.hpp"
#include "polycomplex/gp.hpp"
#include "polycomplex/kernels.hpp"
#include "polycomplex/polyatomic.hpp"

namespace polycomplex {

enum class Representation { Fast, Deep, Smiles, Graph };
std::string_view to_string(Representation r) noexcept;
Representation representation_from_string(std::string_view name);

struct BenchConfig {
  std::string dataset;
  std::string input_column = "smiles";
  std::string input_kind = "smiles";  // smiles | formula
  std::vector<std::string> targets;
  Representation representation = Representation::Fast;
  KernelKind kernel = KernelKind::Tanimoto;
  int n_trials = 20;
  int n_epochs = 5;
  double split = 0.67;
  std::uint64_t seed = 0;
  std::size_t max_rows = 0;
  bool include_hydrogens = true;
  int m_spec = 8;
  int wl_iterations = 3;
  int n_bootstrap = 1000;
  std::string feature_cache;  // directory; empty disables caching
  AtomicConfig atomic;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;
};

const std::set<std::string> &bench_config_keys();
BenchConfig bench_config_from(const KeyValueConfig &kv);

struct TrialResult {
  std::string target;
  int trial = 0;
  std::uint64_t seed = 0;
  double mae = 0.0;
  double rmse = 0.0;
  double crps = 0.0;
  GPHyper hyper;
  int clamp_events = 0;
};

struct MetricAggregate {
  double mean = 0.0;
  std::optional<double> stderr_;  // absent with fewer than two trials
};

struct TargetAggregate {
  std::string target;
  MetricAggregate mae, rmse, crps;
};

struct BenchmarkReport {
  BenchConfig config;
  std::size_t rows = 0;
  std::size_t imputed_cells = 0;
  std::vector<TrialResult> trials;
  std::vector<TargetAggregate> aggregates;

  nlohmann::json to_json() const;
};

/// Mean and bootstrap standard error; values are sorted first so the result
/// does not depend on trial order.
MetricAggregate aggregate(std::vector<double> values, int n_bootstrap, std::uint64_t seed);

/// Unit-scale kernel over every dataset row for the configured
/// representation and kernel.
Eigen::MatrixXd dataset_kernel(const Dataset &data, const BenchConfig &config);

/// Zero-padded, flattened complex features, one row per dataset row.
Eigen::MatrixXd complex_features(const std::vector<std::string> &inputs, const BenchConfig &config);

BenchmarkReport run_benchmark(const BenchConfig &config);
BenchmarkReport run_benchmark(const BenchConfig &config, const Dataset &data);

}  // namespace polycomplex
