//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "polycomplex/error.hpp"
#include "polycomplex/metrics.hpp"
#include "polycomplex/smiles.hpp"

namespace polycomplex {

using nlohmann::json;

std::string_view to_string(Representation r) noexcept {
  switch (r) {
  case Representation::Fast:
    return "fast";
  case Representation::Deep:
    return "deep";
  case Representation::Smiles:
    return "smiles";
  case Representation::Graph:
    return "graph";
  }
  return "fast";
}

Representation representation_from_string(std::string_view name) {
  if (name == "fast")
    return Representation::Fast;
  if (name == "deep")
    return Representation::Deep;
  if (name == "smiles")
    return Representation::Smiles;
  if (name == "graph")
    return Representation::Graph;
  throw Error(ErrorCode::ConfigError,
              "config key 'representation': expected fast, deep, smiles or graph, got '" + std::string(name) + "'");
}

void BenchConfig::validate() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::ConfigError, msg); };
  if (dataset.empty())
    fail("config key 'dataset' is required");
  if (targets.empty())
    fail("config key 'targets' needs at least one column");
  if (input_column.empty())
    fail("config key 'input_column' must not be empty");
  if (input_kind != "smiles" && input_kind != "formula")
    fail("config key 'input_kind': expected smiles or formula");
  if (n_trials < 1)
    fail("config key 'n_trials' must be at least 1");
  if (n_epochs < 0)
    fail("config key 'n_epochs' must be non-negative");
  if (!(split > 0.0 && split < 1.0))
    fail("config key 'split' must lie strictly between 0 and 1");
  if (m_spec < 0)
    fail("config key 'm_spec' must be non-negative");
  if (wl_iterations < 0)
    fail("config key 'wl_iterations' must be non-negative");
  if (n_bootstrap < 100)
    fail("config key 'n_bootstrap' must be at least 100");
  const bool complex_rep = representation == Representation::Fast || representation == Representation::Deep;
  if (complex_rep && kernel != KernelKind::Tanimoto)
    fail("representation '" + std::string(to_string(representation)) + "' requires kernel 'tanimoto'");
  if (representation == Representation::Graph && kernel != KernelKind::WL)
    fail("representation 'graph' requires kernel 'wl'");
  if (kernel == KernelKind::WL && representation != Representation::Graph)
    fail("kernel 'wl' requires representation 'graph'");
  if (kernel == KernelKind::String && representation != Representation::Smiles)
    fail("kernel 'string' requires representation 'smiles'");
  if (input_kind == "formula" && !complex_rep)
    fail("composition inputs support only the fast and deep representations");
  atomic.validate();
}

json BenchConfig::to_json() const {
  return {{"dataset", std::filesystem::path(dataset).filename().string()},
          {"input_column", input_column},
          {"input_kind", input_kind},
          {"targets", targets},
          {"representation", std::string(polycomplex::to_string(representation))},
          {"kernel", std::string(polycomplex::to_string(kernel))},
          {"n_trials", n_trials},
          {"n_epochs", n_epochs},
          {"split", split},
          {"seed", seed},
          {"max_rows", max_rows},
          {"include_hydrogens", include_hydrogens},
          {"m_spec", m_spec},
          {"wl_iterations", wl_iterations},
          {"n_bootstrap", n_bootstrap},
          {"proton_dim", atomic.proton_dim},
          {"neutron_dim", atomic.neutron_dim},
          {"electron_dim", atomic.electron_dim},
          {"dim_range", atomic.dim_range ? json(*atomic.dim_range) : json(nullptr)},
          {"samples_per_cell", atomic.samples_per_cell},
          {"radius_p_fm", atomic.radius_p_fm},
          {"radius_n_fm", atomic.radius_n_fm},
          {"radius_e_fm", atomic.radius_e_fm}};
}

const std::set<std::string> &bench_config_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k{"dataset",   "input_column",  "input_kind",    "targets",     "representation",
                            "kernel",    "n_trials",      "n_epochs",      "split",       "seed",
                            "max_rows",  "include_hydrogens", "m_spec",    "wl_iterations", "n_bootstrap",
                            "feature_cache", "featurizer"};
    k.insert(atomic_config_keys().begin(), atomic_config_keys().end());
    return k;
  }();
  return keys;
}

BenchConfig bench_config_from(const KeyValueConfig &kv) {
  kv.check_known(bench_config_keys());
  BenchConfig c;
  c.dataset = kv.require("dataset");
  c.input_column = kv.get("input_column", c.input_column);
  c.input_kind = kv.get("input_kind", c.input_kind);
  c.targets = kv.get_list("targets");
  std::string rep = kv.get("representation", kv.get("featurizer", "fast"));
  c.representation = representation_from_string(rep);
  c.kernel = kernel_from_string(kv.get("kernel", "tanimoto"));
  c.n_trials = static_cast<int>(kv.get_int("n_trials", c.n_trials));
  c.n_epochs = static_cast<int>(kv.get_int("n_epochs", c.n_epochs));
  c.split = kv.get_double("split", c.split);
  c.seed = kv.get_u64("seed", c.seed);
  const long max_rows = kv.get_int("max_rows", 0);
  if (max_rows < 0)
    throw Error(ErrorCode::ConfigError, "config key 'max_rows' must be non-negative");
  c.max_rows = static_cast<std::size_t>(max_rows);
  c.include_hydrogens = kv.get_bool("include_hydrogens", c.include_hydrogens);
  c.m_spec = static_cast<int>(kv.get_int("m_spec", c.m_spec));
  c.wl_iterations = static_cast<int>(kv.get_int("wl_iterations", c.wl_iterations));
  c.n_bootstrap = static_cast<int>(kv.get_int("n_bootstrap", c.n_bootstrap));
  c.feature_cache = kv.get("feature_cache", "");
  c.atomic = atomic_config_from(kv);
  c.validate();
  return c;
}

json BenchmarkReport::to_json() const {
  json trial_rows = json::array();
  for (const auto &t : trials)
    trial_rows.push_back({{"target", t.target},
                          {"trial", t.trial},
                          {"seed", t.seed},
                          {"mae", t.mae},
                          {"rmse", t.rmse},
                          {"crps", t.crps},
                          {"signal_variance", t.hyper.signal_variance},
                          {"noise_variance", t.hyper.noise_variance},
                          {"variance_clamps", t.clamp_events}});
  json aggs = json::object();
  auto metric = [](const MetricAggregate &m) {
    return json{{"mean", m.mean}, {"stderr", m.stderr_ ? json(*m.stderr_) : json(nullptr)}};
  };
  for (const auto &a : aggregates)
    aggs[a.target] = {{"mae", metric(a.mae)}, {"rmse", metric(a.rmse)}, {"crps", metric(a.crps)}};
  return {{"config", config.to_json()},
          {"rows", rows},
          {"imputed_cells", imputed_cells},
          {"trials", std::move(trial_rows)},
          {"aggregates", std::move(aggs)}};
}

MetricAggregate aggregate(std::vector<double> values, int n_bootstrap, std::uint64_t seed) {
  if (values.empty())
    throw Error(ErrorCode::Empty, "aggregate over no trials");
  std::sort(values.begin(), values.end());
  MetricAggregate out;
  double sum = 0.0;
  for (double v : values)
    sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2)
    out.stderr_ = bootstrap_stderr(values, n_bootstrap, seed);
  return out;
}

namespace {

AtomInventory inventory_for(const std::string &input, const BenchConfig &config) {
  if (config.input_kind == "formula") {
    AtomInventory inv = parse_formula(input);
    if (!config.include_hydrogens)
      std::erase_if(inv.entries, [](const InventoryEntry &e) { return e.element.atomic_number == 1; });
    return inv;
  }
  return atom_inventory(parse_smiles(input), config.include_hydrogens);
}

std::string cache_path(const std::vector<std::string> &inputs, const BenchConfig &config) {
  const FeatureConfig fc{config.representation == Representation::Deep ? Featurizer::Deep : Featurizer::Fast,
                         config.m_spec};
  std::string key = fmt::format("{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}", fc.hash(), config.seed,
                                config.include_hydrogens, config.input_kind, config.atomic.proton_dim,
                                config.atomic.neutron_dim, config.atomic.electron_dim,
                                config.atomic.dim_range.value_or(-1), config.atomic.samples_per_cell,
                                config.atomic.radius_p_fm, config.atomic.radius_n_fm, config.atomic.radius_e_fm);
  for (const auto &s : inputs)
    key += "|" + s;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return (std::filesystem::path(config.feature_cache) / fmt::format("features-{:016x}.csv", h)).string();
}

}  // namespace

Eigen::MatrixXd complex_features(const std::vector<std::string> &inputs, const BenchConfig &config) {
  const FeatureConfig fc{config.representation == Representation::Deep ? Featurizer::Deep : Featurizer::Fast,
                         config.m_spec};
  const std::size_t n = inputs.size();
  std::vector<FeatureMatrix> mats(n);
  std::string path;
  bool cached = false;
  if (!config.feature_cache.empty()) {
    path = cache_path(inputs, config);
    if (std::filesystem::exists(path)) {
      auto records = read_feature_cache(path);
      if (records.size() == n) {
        for (std::size_t i = 0; i < n; ++i)
          mats[i].values = std::move(records[i].values);
        cached = true;
        spdlog::info("loaded {} cached feature matrices from {}", n, path);
      }
    }
  }
  if (!cached) {
    PolyatomicConfig pc;
    pc.atomic = config.atomic;
    std::vector<std::optional<Error>> failures(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        const PolyatomicComplex poly = build_polyatomic_complex(inventory_for(inputs[i], config), pc, config.seed);
        mats[i] = featurize(poly, fc);
      } catch (const Error &e) {
        failures[i] = Error(e.code(), "row " + std::to_string(i) + " ('" + inputs[i] + "'): " + e.what());
      }
    }
    for (auto &f : failures)
      if (f)
        throw *f;
    if (!path.empty()) {
      std::filesystem::create_directories(config.feature_cache);
      std::vector<CachedFeatures> records;
      records.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        records.push_back({std::to_string(i), mats[i].values});
      write_feature_cache(path, records);
    }
  }
  const auto padded = zero_pad(mats);
  const Eigen::Index width = padded.front().values.size();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), width);
  for (std::size_t i = 0; i < n; ++i)
    X.row(static_cast<Eigen::Index>(i)) = flatten(padded[i]).transpose();
  return X;
}

Eigen::MatrixXd dataset_kernel(const Dataset &data, const BenchConfig &config) {
  switch (config.representation) {
  case Representation::Fast:
  case Representation::Deep:
    return gram_tanimoto(complex_features(data.inputs, config)).values;
  case Representation::Smiles: {
    if (config.kernel == KernelKind::String)
      return normalize_kernel(gram_string(data.inputs).values);
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data.size()), 256);
    for (std::size_t i = 0; i < data.size(); ++i)
      for (unsigned char c : data.inputs[i])
        X(static_cast<Eigen::Index>(i), c) += 1.0;
    return gram_tanimoto(X).values;
  }
  case Representation::Graph: {
    std::vector<MolecularGraph> graphs;
    graphs.reserve(data.size());
    for (const auto &s : data.inputs)
      graphs.push_back(parse_smiles(s));
    return normalize_kernel(gram_wl(graphs, config.wl_iterations).values);
  }
  }
  throw Error(ErrorCode::ConfigError, "unsupported representation");
}

BenchmarkReport run_benchmark(const BenchConfig &config, const Dataset &data) {
  config.validate();
  if (data.targets.cols() != static_cast<Eigen::Index>(config.targets.size()))
    throw Error(ErrorCode::LengthMismatch, "dataset target columns do not match the configuration");
  const Eigen::MatrixXd K1 = dataset_kernel(data, config);

  BenchmarkReport report;
  report.config = config;
  report.rows = data.size();
  for (const auto &imp : data.imputations)
    report.imputed_cells += imp.rows.size();

  const auto n_targets = config.targets.size();
  const auto n_trials = static_cast<std::size_t>(config.n_trials);
  std::vector<TrialResult> results(n_targets * n_trials);
  std::vector<std::optional<Error>> failures(results.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t job = 0; job < results.size(); ++job) {
    const std::size_t target = job / n_trials;
    const int trial = static_cast<int>(job % n_trials);
    try {
      const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(trial);
      const Split s = split(data.size(), config.split, seed);
      const Eigen::VectorXd y_all = data.targets.col(static_cast<Eigen::Index>(target));
      const Eigen::MatrixXd k_train = K1(s.train, s.train);
      const Eigen::VectorXd y_train = y_all(s.train);
      const Eigen::VectorXd y_test = y_all(s.test);
      GPOptions opts;
      opts.n_epochs = config.n_epochs;
      const GPModel model = GPModel::fit(k_train, y_train, opts);
      const Eigen::MatrixXd k_cross = K1(s.test, s.train);
      const Eigen::VectorXd k_diag = K1(s.test, s.test).diagonal();
      const GPPrediction pred = model.predict(k_cross, k_diag);
      const Eigen::VectorXd sigma = pred.variance.cwiseMax(kNoiseFloor).cwiseSqrt();

      TrialResult r;
      r.target = config.targets[target];
      r.trial = trial;
      r.seed = seed;
      r.mae = mae(pred.mean, y_test);
      r.rmse = rmse(pred.mean, y_test);
      r.crps = crps_gaussian(pred.mean, sigma, y_test);
      r.hyper = model.hyper();
      r.clamp_events = pred.clamp_events;
      results[job] = r;
    } catch (const Error &e) {
      failures[job] = Error(e.code(), "trial " + std::to_string(trial) + " failed: " + e.what());
    }
  }
  for (auto &f : failures)
    if (f)
      throw *f;

  report.trials = results;
  for (std::size_t t = 0; t < n_targets; ++t) {
    std::vector<double> m, r, c;
    for (std::size_t i = 0; i < n_trials; ++i) {
      const auto &tr = results[t * n_trials + i];
      m.push_back(tr.mae);
      r.push_back(tr.rmse);
      c.push_back(tr.crps);
    }
    TargetAggregate agg;
    agg.target = config.targets[t];
    agg.mae = aggregate(m, config.n_bootstrap, config.seed);
    agg.rmse = aggregate(r, config.n_bootstrap, config.seed);
    agg.crps = aggregate(c, config.n_bootstrap, config.seed);
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

BenchmarkReport run_benchmark(const BenchConfig &config) {
  config.validate();
  const Dataset data = load_dataset(config.dataset, config.input_column, config.targets, config.max_rows);
  spdlog::info("loaded {} rows from {} ({} imputed cells)", data.size(), config.dataset,
               [&] {
                 std::size_t k = 0;
                 for (const auto &imp : data.imputations)
                   k += imp.rows.size();
                 return k;
               }());
  return run_benchmark(config, data);
}

}  // namespace polycomplex
