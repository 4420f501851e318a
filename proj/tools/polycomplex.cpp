//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: validate, encode, featurize, kernel, benchmark, rdf, potential.
//

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "polycomplex/bench.hpp"
#include "polycomplex/config.hpp"
#include "polycomplex/dataset.hpp"
#include "polycomplex/error.hpp"
#include "polycomplex/featurize.hpp"
#include "polycomplex/forcefield.hpp"
#include "polycomplex/io.hpp"
#include "polycomplex/kernels.hpp"
#include "polycomplex/polyatomic.hpp"
#include "polycomplex/serialize.hpp"
#include "polycomplex/smiles.hpp"

namespace fs = std::filesystem;
using namespace polycomplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Raised for problems with how the tool was invoked rather than with the data.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int jobs = 0;
  std::optional<std::uint64_t> seed;
  std::string log_level = "warn";
};

std::uint64_t parse_seed(const std::string &text, const std::string &source) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw UsageError(source + ": seed must be a non-negative integer, got '" + text + "'");
  }
}

// --seed beats POLYCOMPLEX_SEED, which beats the config file.
std::uint64_t resolve_seed(const Globals &g, std::uint64_t configured) {
  if (g.seed)
    return *g.seed;
  if (const char *env = std::getenv("POLYCOMPLEX_SEED"); env && *env)
    return parse_seed(env, "POLYCOMPLEX_SEED");
  return configured;
}

void require_file(const std::string &path, const std::string &what) {
  if (!fs::is_regular_file(path))
    throw UsageError(what + " '" + path + "' does not exist");
}

bool looks_like_csv(const std::string &input) {
  return fs::path(input).extension() == ".csv" || fs::is_regular_file(input);
}

std::string describe(const Error &e) {
  return e.what();
}

AtomicConfig atomic_from_file(const std::string &path) {
  if (path.empty())
    return {};
  require_file(path, "config file");
  KeyValueConfig kv = KeyValueConfig::load(path);
  kv.check_known(atomic_config_keys());
  return atomic_config_from(kv);
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string input;
  std::string column = "smiles";
  bool formula = false;
};

int cmd_validate(const ValidateArgs &a) {
  auto check = [&](const std::string &s) {
    if (a.formula)
      (void)parse_formula(s);
    else
      (void)atom_inventory(parse_smiles(s));
  };
  if (!looks_like_csv(a.input)) {
    try {
      check(a.input);
      std::cout << "OK\t" << a.input << "\n";
      return kExitOk;
    } catch (const Error &e) {
      std::cout << "ERROR\t" << a.input << "\t" << describe(e) << "\n";
      return kExitData;
    }
  }
  require_file(a.input, "input");
  const CsvTable table = read_csv(a.input);
  const std::size_t col = table.column(a.column);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    try {
      check(table.rows[i][col]);
    } catch (const Error &e) {
      ++bad;
      std::cout << fmt::format("line {}\t{}\t{}\n", table.lines[i], table.rows[i][col], describe(e));
    }
  }
  std::cout << fmt::format("{} rows, {} parsed, {} errors\n", table.rows.size(), table.rows.size() - bad, bad);
  return bad == 0 ? kExitOk : kExitData;
}

// ---------------------------------------------------------------- encode / featurize

struct EncodeArgs {
  std::vector<std::string> inputs;
  std::string featurizer = "fast";
  std::string out;
  std::string config;
  std::string column = "smiles";
  bool formula = false;
  bool no_hydrogens = false;
  int m_spec = 8;
  std::size_t max_rows = 0;
};

struct Molecule {
  std::string id;
  std::vector<ElementRecord> atoms;
  std::optional<std::vector<Eigen::Vector3d>> coords;
};

Molecule molecule_from(const std::string &input, const EncodeArgs &a) {
  Molecule m;
  m.id = input;
  if (fs::path(input).extension() == ".xyz") {
    require_file(input, "xyz file");
    XyzMolecule x = read_xyz(input);
    m.id = fs::path(input).filename().string();
    m.atoms = x.atoms;
    m.coords = x.coords;
    if (a.no_hydrogens) {
      std::vector<ElementRecord> atoms;
      std::vector<Eigen::Vector3d> coords;
      for (std::size_t i = 0; i < x.atoms.size(); ++i)
        if (x.atoms[i].atomic_number != 1) {
          atoms.push_back(x.atoms[i]);
          coords.push_back(x.coords[i]);
        }
      m.atoms = std::move(atoms);
      m.coords = std::move(coords);
    }
    return m;
  }
  AtomInventory inv = a.formula ? parse_formula(input) : atom_inventory(parse_smiles(input), !a.no_hydrogens);
  if (a.formula && a.no_hydrogens)
    std::erase_if(inv.entries, [](const InventoryEntry &e) { return e.element.atomic_number == 1; });
  m.atoms = inv.expand();
  return m;
}

std::vector<std::string> expand_inputs(const EncodeArgs &a) {
  std::vector<std::string> out;
  for (const auto &in : a.inputs) {
    if (fs::path(in).extension() == ".csv") {
      require_file(in, "input");
      const CsvTable table = read_csv(in);
      const std::size_t col = table.column(a.column);
      for (std::size_t i = 0; i < table.rows.size() && (a.max_rows == 0 || i < a.max_rows); ++i)
        out.push_back(table.rows[i][col]);
    } else {
      out.push_back(in);
    }
  }
  if (out.empty())
    throw UsageError("no inputs given");
  return out;
}

struct Encoded {
  std::vector<PolyatomicComplex> complexes;
  std::vector<CachedFeatures> features;
};

Encoded encode_all(const EncodeArgs &a, std::uint64_t seed, bool keep_complexes) {
  const auto inputs = expand_inputs(a);
  PolyatomicConfig pc;
  pc.atomic = atomic_from_file(a.config);
  const FeatureConfig fc{featurizer_from_string(a.featurizer), a.m_spec};
  Encoded out;
  out.features.resize(inputs.size());
  if (keep_complexes)
    out.complexes.resize(inputs.size());
  std::vector<std::optional<std::string>> failures(inputs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      const Molecule m = molecule_from(inputs[i], a);
      PolyatomicComplex poly = build_polyatomic_complex(m.atoms, pc, seed, m.coords ? &*m.coords : nullptr);
      out.features[i] = {m.id, featurize(poly, fc).values};
      if (keep_complexes)
        out.complexes[i] = std::move(poly);
    } catch (const Error &e) {
      failures[i] = fmt::format("input {} ('{}'): {}", i, inputs[i], describe(e));
    } catch (const UsageError &e) {
      failures[i] = e.what();
    }
  }
  for (const auto &f : failures)
    if (f)
      throw Error(ErrorCode::InvalidArgument, *f);
  return out;
}

int cmd_encode(const EncodeArgs &a, const Globals &g) {
  const Encoded enc = encode_all(a, resolve_seed(g, 0), true);
  fs::create_directories(a.out);
  const int width = std::max<int>(3, static_cast<int>(std::to_string(enc.complexes.size() - 1).size()));
  for (std::size_t i = 0; i < enc.complexes.size(); ++i) {
    const std::string name = fmt::format("complex_{:0{}}.json", i, width);
    write_text_file((fs::path(a.out) / name).string(), to_json(enc.complexes[i]).dump(1) + "\n");
  }
  write_feature_cache((fs::path(a.out) / "features.csv").string(), enc.features);
  for (std::size_t i = 0; i < enc.complexes.size(); ++i)
    std::cout << fmt::format("{}\t{} cells\t{}x{} features\n", enc.features[i].id, enc.complexes[i].C.size(),
                             enc.features[i].values.rows(), enc.features[i].values.cols());
  return kExitOk;
}

int cmd_featurize(const EncodeArgs &a, const Globals &g) {
  const Encoded enc = encode_all(a, resolve_seed(g, 0), false);
  write_feature_cache(a.out, enc.features);
  std::cout << fmt::format("wrote {} feature matrices to {}\n", enc.features.size(), a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- kernel

struct KernelArgs {
  EncodeArgs encode;
  std::string kernel = "tanimoto";
  int wl_iterations = 3;
  bool normalize = false;
};

int cmd_kernel(const KernelArgs &k, const Globals &g) {
  const KernelKind kind = kernel_from_string(k.kernel);
  Eigen::MatrixXd K;
  std::vector<std::string> ids;
  if (kind == KernelKind::Tanimoto) {
    const Encoded enc = encode_all(k.encode, resolve_seed(g, 0), false);
    std::vector<FeatureMatrix> mats;
    for (const auto &f : enc.features) {
      FeatureMatrix m;
      m.values = f.values;
      mats.push_back(std::move(m));
      ids.push_back(f.id);
    }
    const auto padded = zero_pad(mats);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(padded.size()), flatten(padded.front()).size());
    for (std::size_t i = 0; i < padded.size(); ++i)
      X.row(static_cast<Eigen::Index>(i)) = flatten(padded[i]).transpose();
    K = gram_tanimoto(X).values;
  } else {
    ids = expand_inputs(k.encode);
    if (kind == KernelKind::String) {
      K = gram_string(ids).values;
    } else {
      std::vector<MolecularGraph> graphs;
      for (const auto &s : ids)
        graphs.push_back(parse_smiles(s));
      K = gram_wl(graphs, k.wl_iterations).values;
    }
  }
  if (k.normalize)
    K = normalize_kernel(K);
  std::string csv = "id";
  for (const auto &id : ids)
    csv += ",\"" + id + "\"";
  csv += "\n";
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    csv += "\"" + ids[static_cast<std::size_t>(i)] + "\"";
    for (Eigen::Index j = 0; j < K.cols(); ++j)
      csv += fmt::format(",{}", K(i, j));
    csv += "\n";
  }
  write_text_file(k.encode.out, csv);
  std::cout << fmt::format("wrote {}x{} {} Gram matrix to {}\n", K.rows(), K.cols(), k.kernel, k.encode.out);
  return kExitOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchArgs {
  std::string config;
  std::string out;
  std::size_t max_rows = 0;
  int n_trials = 0;
};

int cmd_benchmark(const BenchArgs &a, const Globals &g) {
  require_file(a.config, "config file");
  KeyValueConfig kv = KeyValueConfig::load(a.config);
  kv.check_known(bench_config_keys());
  BenchConfig cfg = bench_config_from(kv);
  if (!cfg.dataset.empty() && fs::path(cfg.dataset).is_relative() && !fs::exists(cfg.dataset)) {
    const fs::path beside = fs::path(a.config).parent_path() / cfg.dataset;
    if (fs::exists(beside))
      cfg.dataset = beside.string();
  }
  if (cfg.dataset.empty())
    throw UsageError("config is missing 'dataset'");
  require_file(cfg.dataset, "dataset");
  cfg.seed = resolve_seed(g, cfg.seed);
  if (a.max_rows)
    cfg.max_rows = a.max_rows;
  if (a.n_trials)
    cfg.n_trials = a.n_trials;
  if (!cfg.feature_cache.empty())
    cfg.feature_cache = (fs::path(a.out) / "feature-cache").string();
  cfg.validate();

  const BenchmarkReport report = run_benchmark(cfg);
  fs::create_directories(a.out);
  write_text_file((fs::path(a.out) / "report.json").string(), report.to_json().dump(2) + "\n");

  auto cell = [](const MetricAggregate &m) {
    return m.stderr_ ? fmt::format("{:.4f} +/- {:.4f}", m.mean, *m.stderr_) : fmt::format("{:.4f}", m.mean);
  };
  std::cout << fmt::format("{} rows, {} trials, {} + {}\n", report.rows, cfg.n_trials, to_string(cfg.representation),
                           to_string(cfg.kernel));
  std::cout << fmt::format("{:<28} {:>22} {:>22} {:>22}\n", "target", "MAE", "RMSE", "CRPS");
  for (const auto &t : report.aggregates)
    std::cout << fmt::format("{:<28} {:>22} {:>22} {:>22}\n", t.target, cell(t.mae), cell(t.rmse), cell(t.crps));
  return kExitOk;
}

// ---------------------------------------------------------------- rdf

struct RdfArgs {
  std::string xyz;
  std::string out;
  double r_max = 5.0;
  int bins = 50;
  int samples = 0;
  std::optional<double> box;
};

int cmd_rdf(const RdfArgs &a, const Globals &g) {
  require_file(a.xyz, "xyz file");
  const XyzMolecule mol = read_xyz(a.xyz);
  RdfParams p;
  p.r_max = a.r_max;
  p.n_bins = a.bins;
  p.n_samples = a.samples;
  p.box = a.box;
  Rng rng = make_stream(resolve_seed(g, 0), UINT64_MAX, 4);
  const RdfResult res = radial_distribution(mol.coords, p, rng);
  std::string csv = "r_bohr,g\n";
  for (Eigen::Index i = 0; i < res.r.size(); ++i)
    csv += fmt::format("{},{}\n", res.r(i), res.g(i));
  write_text_file(a.out, csv);
  std::cout << fmt::format("wrote {} bins to {}\n", res.r.size(), a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- potential

struct PotentialArgs {
  std::string xyz;
  std::string params;
  std::string smiles;  // optional: bonds from the molecular graph
  std::string out;
};

int cmd_potential(const PotentialArgs &a) {
  require_file(a.xyz, "xyz file");
  require_file(a.params, "parameter file");
  const XyzMolecule mol = read_xyz(a.xyz);
  PotentialParams params = load_potential_params(a.params);
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  if (!a.smiles.empty()) {
    const MolecularGraph graph = parse_smiles(a.smiles);
    if (graph.atoms.size() != mol.atoms.size())
      throw Error(ErrorCode::CoordinateCountMismatch,
                  fmt::format("SMILES has {} explicit atoms but the xyz file has {}", graph.atoms.size(),
                              mol.atoms.size()));
    for (const auto &b : graph.bonds)
      bonds.emplace_back(b.a, b.b);
    params.use_graph_bonds = true;
  }
  const Complex skeleton = atom_skeleton(mol.atoms, bonds);
  Coordinates coords;
  for (std::size_t i = 0; i < mol.atoms.size(); ++i)
    coords[static_cast<CellId>(i)] = mol.coords_angstrom[i];
  const PotentialBreakdown v = classical_potential(skeleton, coords, params);
  nlohmann::ordered_json doc = {
      {"bond", v.bond},         {"angle", v.angle},
      {"dihedral", v.dihedral}, {"lennard_jones", v.lennard_jones},
      {"coulomb", v.coulomb},   {"total", v.total},
      {"counts", {{"bond", v.n_bond}, {"angle", v.n_angle}, {"dihedral", v.n_dihedral}, {"nonbonded", v.n_nonbonded}}},
  };
  const std::string text = doc.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text_file(a.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Encode molecules as polyatomic cell complexes and benchmark kernel GP regression on them."};
  app.require_subcommand(1);
  Globals g;
  std::string seed_text;
  app.add_option("-j,--jobs", g.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed_text, "Master seed; overrides POLYCOMPLEX_SEED and config files");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  ValidateArgs va;
  auto *validate = app.add_subcommand("validate", "Parse SMILES (or a CSV column) and report errors");
  validate->add_option("input", va.input, "SMILES string or CSV file")->required();
  validate->add_option("--column", va.column, "CSV column holding the inputs");
  validate->add_flag("--formula", va.formula, "Inputs are molecular formulas");

  auto add_encode_options = [](CLI::App *cmd, EncodeArgs &e, bool out_dir) {
    cmd->add_option("inputs", e.inputs, "SMILES strings, formulas, .xyz files or CSV files")->required();
    cmd->add_option("--featurizer", e.featurizer, "fast|deep")->check(CLI::IsMember({"fast", "deep"}));
    cmd->add_option("--out", e.out, out_dir ? "Output directory" : "Output file")->required();
    cmd->add_option("--config", e.config, "key=value file with atomic complex settings");
    cmd->add_option("--column", e.column, "CSV column holding the inputs");
    cmd->add_option("--max-rows", e.max_rows, "Read at most this many CSV rows");
    cmd->add_option("--m-spec", e.m_spec, "Hodge eigenvalues per row (deep)")->check(CLI::PositiveNumber);
    cmd->add_flag("--formula", e.formula, "Inputs are molecular formulas");
    cmd->add_flag("--no-hydrogens", e.no_hydrogens, "Drop hydrogen atoms");
  };
  EncodeArgs ea;
  auto *encode = app.add_subcommand("encode", "Build complexes; write complex JSON and features into --out");
  add_encode_options(encode, ea, true);
  EncodeArgs fa;
  auto *featurize_cmd = app.add_subcommand("featurize", "Write a feature cache CSV for the inputs");
  add_encode_options(featurize_cmd, fa, false);
  KernelArgs ka;
  auto *kernel = app.add_subcommand("kernel", "Write the Gram matrix of the inputs as CSV");
  add_encode_options(kernel, ka.encode, false);
  kernel->add_option("--kernel", ka.kernel, "tanimoto|string|wl")->check(CLI::IsMember({"tanimoto", "string", "wl"}));
  kernel->add_option("--wl-iterations", ka.wl_iterations, "Weisfeiler-Lehman refinement rounds");
  kernel->add_flag("--normalize", ka.normalize, "Cosine-normalize the Gram matrix");

  BenchArgs ba;
  auto *benchmark = app.add_subcommand("benchmark", "Run the GP regression protocol from a config file");
  benchmark->add_option("config", ba.config, "key=value benchmark config")->required();
  benchmark->add_option("--out", ba.out, "Output directory (report.json)")->required();
  benchmark->add_option("--max-rows", ba.max_rows, "Override max_rows");
  benchmark->add_option("--trials", ba.n_trials, "Override n_trials")->check(CLI::PositiveNumber);

  RdfArgs ra;
  auto *rdf = app.add_subcommand("rdf", "Radial distribution function of an xyz structure");
  rdf->add_option("xyz", ra.xyz, "Structure (angstrom)")->required();
  rdf->add_option("--out", ra.out, "Output CSV")->required();
  rdf->add_option("--r-max", ra.r_max, "Histogram range (bohr)");
  rdf->add_option("--bins", ra.bins, "Histogram bins");
  rdf->add_option("--samples", ra.samples, "Reference picks (0 = every atom once)");
  rdf->add_option("--box", ra.box, "Cubic periodic box edge (bohr)");

  PotentialArgs pa;
  auto *potential = app.add_subcommand("potential", "Evaluate the classical force model on an xyz structure");
  potential->add_option("xyz", pa.xyz, "Structure (angstrom)")->required();
  potential->add_option("--params", pa.params, "Force-model parameter file")->required();
  potential->add_option("--smiles", pa.smiles, "Take bonds from this SMILES (atom order must match)");
  potential->add_option("--out", pa.out, "Output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    spdlog::set_level(spdlog::level::from_str(g.log_level));
    spdlog::set_default_logger(spdlog::default_logger()->clone("polycomplex"));
    if (!seed_text.empty())
      g.seed = parse_seed(seed_text, "--seed");
#ifdef _OPENMP
    omp_set_num_threads(g.jobs > 0 ? g.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
#endif
    if (*validate)
      return cmd_validate(va);
    if (*encode)
      return cmd_encode(ea, g);
    if (*featurize_cmd)
      return cmd_featurize(fa, g);
    if (*kernel)
      return cmd_kernel(ka, g);
    if (*benchmark)
      return cmd_benchmark(ba, g);
    if (*rdf)
      return cmd_rdf(ra, g);
    if (*potential)
      return cmd_potential(pa);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << describe(e) << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitUsage : kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
