// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "polycomplex/bench.hpp"
#include "polycomplex/config.hpp"
#include "polycomplex/dataset.hpp"
#include "polycomplex/error.hpp"
#include "polycomplex/io.hpp"
#include "polycomplex/metrics.hpp"
#include "support.hpp"

using namespace polycomplex;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// CRPS(F, y) = E|X - y| - 1/2 E|X - X'| by simulation.
double crps_monte_carlo(double mu, double sigma, double y, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(mu, sigma);
  double a = 0.0, b = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = z(rng), xp = z(rng);
    a += std::abs(x - y);
    b += std::abs(x - xp);
  }
  return a / n - 0.5 * b / n;
}

}  // namespace

TEST_CASE("csv parsing") {
  const CsvTable t = parse_csv("\xEF\xBB\xBFname,value\r\n\"a, b\",1\r\n\"say \"\"hi\"\"\",2\n");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.header[0] == "name");
  CHECK(t.rows[0][0] == "a, b");
  CHECK(t.rows[1][0] == "say \"hi\"");
  CHECK(t.lines[1] == 3);
  CHECK(code_of([] { parse_csv("a,b\n1,2,3\n"); }) == ErrorCode::UnparseableRow);
  CHECK(code_of([&] { (void)t.column("missing"); }) == ErrorCode::MissingColumn);
}

TEST_CASE("mean imputation") {
  const CsvTable t = parse_csv("s,y,z\nC,1.0,5\nO,,6\nN,3.0,NA\n");
  const Dataset d = dataset_from_table(t, "s", {"y", "z"});
  CHECK(d.targets(1, 0) == 2.0);
  CHECK(d.targets(2, 1) == 5.5);
  REQUIRE(d.imputations.size() == 2);
  CHECK(d.imputations[0].rows == std::vector<std::size_t>{1});
  CHECK(d.imputations[0].fill_value == 2.0);

  const Dataset full = dataset_from_table(parse_csv("s,y\nC,1\nO,2\n"), "s", {"y"});
  CHECK(full.imputations.empty());
  CHECK(code_of([] { dataset_from_table(parse_csv("s,y\nC,\nO,NA\n"), "s", {"y"}); }) == ErrorCode::AllMissingColumn);
  CHECK(code_of([] { dataset_from_table(parse_csv("s,y\nC,abc\n"), "s", {"y"}); }) == ErrorCode::UnparseableRow);
  CHECK(code_of([] { dataset_from_table(parse_csv("s,y\nC,1\n"), "s", {"w"}); }) == ErrorCode::MissingColumn);
}

TEST_CASE("ESOL ingests 1128 rows") {
  const Dataset d =
      load_dataset(testing::data_path("ESOL.csv"), "smiles", {"measured log solubility in mols per litre"});
  CHECK(d.size() == 1128);
  CHECK(d.imputations.empty());
  const Dataset f = load_dataset(testing::data_path("FreeSolv.csv"), "smiles", {"expt", "calc"});
  CHECK(f.size() == 642);
}

TEST_CASE("split") {
  const Split s = split(100, 0.67, 4);
  CHECK(s.train.size() == 67);
  CHECK(s.test.size() == 33);
  std::set<std::size_t> all(s.train.begin(), s.train.end());
  for (auto i : s.test)
    CHECK(all.insert(i).second);
  CHECK(all.size() == 100);
  const Split again = split(100, 0.67, 4);
  CHECK(again.train == s.train);
  CHECK(split(100, 0.67, 5).train != s.train);
  const Split tiny = split(2, 0.999, 0);
  CHECK(tiny.train.size() == 1);
  CHECK(tiny.test.size() == 1);
  CHECK(split(10, 0.1, 0).train.size() == 1);
  CHECK(code_of([] { split(1, 0.5, 0); }) == ErrorCode::DegenerateSplit);
  CHECK(code_of([] { split(10, 1.0, 0); }) == ErrorCode::DegenerateSplit);
}

TEST_CASE("MAE and RMSE") {
  const Eigen::Vector2d p(1, 3), t(2, 5);
  CHECK(mae(p, t) == 1.5);
  CHECK(rmse(p, t) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK(mae(t, t) == 0.0);
  CHECK(rmse(t, t) == 0.0);
  CHECK(mae(Eigen::VectorXd::Constant(1, 4.0), Eigen::VectorXd::Constant(1, 1.5)) == 2.5);
  CHECK(rmse(Eigen::VectorXd::Constant(1, 4.0), Eigen::VectorXd::Constant(1, 1.5)) == 2.5);
  CHECK(code_of([] { mae(Eigen::VectorXd(0), Eigen::VectorXd(0)); }) == ErrorCode::Empty);
  CHECK(code_of([&] { rmse(p, Eigen::Vector3d(1, 2, 3)); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("property: RMSE is at least MAE") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0, 3);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd a(7), b(7);
    for (int i = 0; i < 7; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
    }
    CHECK(rmse(a, b) >= mae(a, b));
  }
}

TEST_CASE("CRPS closed form") {
  const double at_zero = 2.0 / std::sqrt(2.0 * std::numbers::pi) - 1.0 / std::sqrt(std::numbers::pi);
  CHECK(crps_gaussian(0.3, 1.0, 0.3) == doctest::Approx(at_zero).epsilon(1e-14));
  CHECK(std::abs(crps_gaussian(0.3, 1.0, 0.3) - 0.2337) < 5e-4);
  CHECK(crps_gaussian(1.0, 1e-12, 1.0) < 1e-11);
  CHECK(crps_gaussian(0.1, 0.7, 2.0) == doctest::Approx(crps_gaussian(5.1, 0.7, 7.0)).epsilon(1e-12));
  CHECK(code_of([] { crps_gaussian(0, 0, 0); }) == ErrorCode::NonPositiveSigma);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2), s(0.2, 2);
  for (int t = 0; t < 5; ++t) {
    const double mu = u(rng), sigma = s(rng), y = u(rng);
    CHECK(std::abs(crps_gaussian(mu, sigma, y) - crps_monte_carlo(mu, sigma, y, 200000, 100 + t)) < 5e-3 * (1 + sigma));
  }
  const Eigen::Vector2d mu(0, 1), sg(1, 2), y(0.5, -1);
  CHECK(crps_gaussian(mu, sg, y) == doctest::Approx(0.5 * (crps_gaussian(0, 1, 0.5) + crps_gaussian(1, 2, -1))));
}

TEST_CASE("bootstrap standard error") {
  CHECK(bootstrap_stderr({2.0, 2.0, 2.0}, 500, 1) == 0.0);
  // mean of two draws with replacement from {0, 1}: 0, 1/2, 1 with probs 1/4, 1/2, 1/4
  const double s = bootstrap_stderr({0.0, 1.0}, 200000, 3);
  CHECK(std::abs(s - std::sqrt(1.0 / 8.0)) < 0.005);
  CHECK(bootstrap_stderr({0.1, 0.5, 0.9}, 1000, 7) == bootstrap_stderr({0.1, 0.5, 0.9}, 1000, 7));
  CHECK(code_of([] { bootstrap_stderr({1.0}, 1000, 0); }) == ErrorCode::TooFewValues);
  CHECK(code_of([] { bootstrap_stderr({1.0, 2.0}, 10, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("aggregate mean and permutation invariance") {
  std::vector<double> v{0.3, 1.7, 0.9, 2.2, 0.4};
  const MetricAggregate a = aggregate(v, 1000, 5);
  CHECK(std::abs(a.mean - (0.3 + 1.7 + 0.9 + 2.2 + 0.4) / 5.0) <= 1e-12);
  std::reverse(v.begin(), v.end());
  const MetricAggregate b = aggregate(v, 1000, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  CHECK_FALSE(aggregate({1.0}, 1000, 5).stderr_.has_value());
}

TEST_CASE("key-value config") {
  const KeyValueConfig kv = KeyValueConfig::parse("# comment\ndataset = x.csv\nn_trials=3\nsplit = 0.5\n"
                                                  "targets = a, b\ninclude_hydrogens = false\n");
  CHECK(kv.get("dataset", "") == "x.csv");
  CHECK(kv.get_int("n_trials", 0) == 3);
  CHECK(kv.get_double("split", 0) == 0.5);
  CHECK(kv.get_list("targets") == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(kv.get_bool("include_hydrogens", true));
  CHECK(code_of([] { KeyValueConfig::parse("a=1\na=2\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { KeyValueConfig::parse("novalue\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { kv.get_int("dataset", 0); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { kv.check_known({"dataset"}); }) == ErrorCode::ConfigError);
}

TEST_CASE("benchmark config validation names the field") {
  auto cfg_error = [](const std::string &text) {
    try {
      bench_config_from(KeyValueConfig::parse(text));
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::ConfigError);
      return std::string(e.what());
    }
    FAIL("expected a config error");
    return std::string();
  };
  CHECK(cfg_error("targets = y\n").find("dataset") != std::string::npos);
  CHECK(cfg_error("dataset = d.csv\ntargets = y\nn_trials = 0\n").find("n_trials") != std::string::npos);
  CHECK(cfg_error("dataset = d.csv\ntargets = y\nsplit = 1.5\n").find("split") != std::string::npos);
  CHECK(cfg_error("dataset = d.csv\ntargets = y\nrepresentation = fast\nkernel = wl\n").find("kernel") !=
        std::string::npos);
  CHECK(cfg_error("dataset = d.csv\n").find("targets") != std::string::npos);
  const BenchConfig ok = bench_config_from(KeyValueConfig::parse("dataset = d.csv\ntargets = y\nfeaturizer = deep\n"));
  CHECK(ok.representation == Representation::Deep);
}

TEST_CASE("run_benchmark on a small synthetic table") {
  std::string csv = "smiles,y\n";
  const std::vector<std::string> mols{"C",      "CC",       "CCC",     "CCCC",    "CCCCC",  "CCO",    "CCCO",
                                      "CCCCO",  "c1ccccc1", "Cc1ccccc1", "CCN",   "CCCN",   "ClCCl",  "CCCl",
                                      "OCCO",   "CC(C)C",   "CC(C)O",  "CC(=O)O", "CCOC",   "CCCCCC"};
  for (std::size_t i = 0; i < mols.size(); ++i)
    csv += mols[i] + "," + std::to_string(0.5 * static_cast<double>(mols[i].size()) - (i % 3 == 0 ? 0.2 : 0.0)) + "\n";
  const Dataset data = dataset_from_table(parse_csv(csv), "smiles", {"y"});

  BenchConfig cfg;
  cfg.dataset = "synthetic.csv";
  cfg.targets = {"y"};
  cfg.n_trials = 4;
  cfg.n_epochs = 2;
  cfg.seed = 3;
  for (auto [rep, kern] : std::vector<std::pair<Representation, KernelKind>>{
           {Representation::Fast, KernelKind::Tanimoto},
           {Representation::Deep, KernelKind::Tanimoto},
           {Representation::Smiles, KernelKind::String},
           {Representation::Graph, KernelKind::WL}}) {
    cfg.representation = rep;
    cfg.kernel = kern;
    const BenchmarkReport r = run_benchmark(cfg, data);
    CHECK(r.trials.size() == 4);
    REQUIRE(r.aggregates.size() == 1);
    for (const auto &t : r.trials) {
      CHECK(t.rmse >= t.mae);
      CHECK(t.seed == 3 + static_cast<std::uint64_t>(t.trial));
    }
    const auto j = r.to_json();
    CHECK(j.at("aggregates").at("y").at("rmse").at("stderr").is_number());
    CHECK(j.dump() == run_benchmark(cfg, data).to_json().dump());
  }
  cfg.representation = Representation::Fast;
  cfg.kernel = KernelKind::Tanimoto;
  cfg.n_trials = 1;
  const auto single = run_benchmark(cfg, data).to_json();
  CHECK(single.at("aggregates").at("y").at("mae").at("stderr").is_null());
  cfg.n_trials = 2;
  cfg.seed = 4;
  const auto other = run_benchmark(cfg, data).to_json();
  CHECK(other.at("trials").at(0).at("seed") == 4);
}

TEST_CASE("xyz parsing") {
  const XyzMolecule m = parse_xyz("3\nwater\nO 0 0 0\nH 0.7586 0 0.5043\nH -0.7586 0 0.5043\n");
  REQUIRE(m.atoms.size() == 3);
  CHECK(m.atoms[0].symbol == "O");
  CHECK(m.comment == "water");
  CHECK(m.coords[1].x() == doctest::Approx(0.7586 / 0.529177210903));
  CHECK(m.coords_angstrom[1].x() == 0.7586);
  CHECK_THROWS_AS(parse_xyz("2\nx\nO 0 0 0\n"), Error);
  CHECK_THROWS_AS(parse_xyz("1\nx\nQq 0 0 0\n"), Error);
}
