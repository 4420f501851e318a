//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/polyatomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "polycomplex/error.hpp"

namespace polycomplex {

namespace {

constexpr std::uint64_t kRadialStreamIndex = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kRadialStreamKind = 4;

Eigen::Vector3d separation(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const std::optional<double> &box) {
  Eigen::Vector3d d = b - a;
  if (box) {
    for (int k = 0; k < 3; ++k)
      d[k] -= *box * std::round(d[k] / *box);
  }
  return d;
}

void merge_into(Complex &target, const Complex &source) {
  for (const auto &cell : source.cells()) {
    GlueMap map;
    for (const auto &[id, sign] : source.boundary_of(cell.id))
      map.targets.push_back({id, sign});
    map.correspondence = source.correspondence_of(cell.id);
    target.attach(cell, std::move(map));
  }
  for (const auto &l : source.links())
    target.link(l.from, l.to, l.label);
}

}  // namespace

double RdfResult::at(double d) const {
  if (r.size() == 0)
    return 0.0;
  if (bin_width > 0.0) {
    if (d < 0.0)
      return 0.0;
    const auto bin = static_cast<Eigen::Index>(std::floor(d / bin_width));
    return bin < g.size() ? g[bin] : 0.0;
  }
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < r.size(); ++i)
    if (std::abs(r[i] - d) < std::abs(r[best] - d))
      best = i;
  return g[best];
}

std::vector<std::size_t> canonical_order(const std::vector<ElementRecord> &atoms,
                                         const std::vector<Eigen::Vector3d> *coords) {
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (atoms[a] != atoms[b])
      return atoms[a] < atoms[b];
    if (coords) {
      const auto &ca = (*coords)[a];
      const auto &cb = (*coords)[b];
      return std::lexicographical_compare(ca.data(), ca.data() + 3, cb.data(), cb.data() + 3);
    }
    return false;
  });
  return order;
}

PolyatomicComplex build_polyatomic_complex(const std::vector<ElementRecord> &atoms,
                                           const PolyatomicConfig &config, std::uint64_t seed,
                                           const std::vector<Eigen::Vector3d> *coords) {
  if (atoms.empty())
    throw Error(ErrorCode::EmptySystem, "polyatomic complex needs at least one atom");
  if (coords && coords->size() != atoms.size())
    throw Error(ErrorCode::CoordinateCountMismatch,
                std::to_string(coords->size()) + " coordinates for " + std::to_string(atoms.size()) + " atoms");
  config.atomic.validate();

  PolyatomicComplex poly;
  poly.input_index = canonical_order(atoms, coords);
  const std::size_t n = atoms.size();
  poly.atoms.reserve(n);
  poly.coords.reserve(n);
  poly.default_coords = coords == nullptr;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = poly.input_index[i];
    poly.atoms.push_back(atoms[src]);
    poly.coords.push_back(coords ? (*coords)[src] : Eigen::Vector3d(static_cast<double>(i), 0.0, 0.0));
  }

  // cell ids are assigned sequentially, so each atom's id range is known up front
  std::vector<CellId> first_ids(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const AtomSpec spec = AtomSpec::from(poly.atoms[i]);
    const int per = config.atomic.dim_range ? *config.atomic.dim_range + 1 : 1;
    first_ids[i + 1] = first_ids[i] + static_cast<CellId>(spec.particle_total()) * per;
  }

  std::vector<AtomicComplex> parts(n);
  std::vector<std::optional<Error>> failures(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      AtomicBuildOptions options;
      options.seed = seed;
      options.stream = i;
      options.first_id = first_ids[i];
      options.owner = static_cast<int>(i);
      parts[i] = build_atomic_complex(AtomSpec::from(poly.atoms[i]), config.atomic, options);
    } catch (const Error &e) {
      failures[i] = e;
    }
  }
  for (auto &f : failures)
    if (f)
      throw *f;

  Eigen::Index f_size = 0, e_size = 0;
  for (std::size_t i = 0; i < n; ++i) {
    poly.cell_offsets.push_back(poly.C.size());
    merge_into(poly.C, parts[i].K);
    if (i > 0 && !parts[i - 1].K.empty() && !parts[i].K.empty())
      poly.C.link(parts[i - 1].K.cells().back().id, parts[i].K.cells().back().id, "phi_a");
    poly.E.insert(poly.E.end(), parts[i].A_E.begin(), parts[i].A_E.end());
    poly.force_blocks.push_back(parts[i].D_F.rows());
    poly.radial_blocks.push_back(parts[i].D_E.rows());
    f_size += parts[i].D_F.rows();
    e_size += parts[i].D_E.rows();
  }
  poly.cell_offsets.push_back(poly.C.size());

  if (config.using_force_model) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(f_size, f_size);
    Eigen::Index off = 0;
    for (const auto &part : parts) {
      F.block(off, off, part.D_F.rows(), part.D_F.cols()) = part.D_F;
      off += part.D_F.rows();
    }
    std::vector<double> charges;
    for (const auto &a : poly.atoms)
      charges.push_back(static_cast<double>(a.atomic_number));
    if (n > 1)
      update_forces(F, poly.force_blocks, charges, poly.coords);
    poly.F = std::move(F);
  }

  if (config.using_radial) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(e_size, e_size);
    Eigen::Index off = 0;
    for (const auto &part : parts) {
      D.block(off, off, part.D_E.rows(), part.D_E.cols()) = part.D_E;
      off += part.D_E.rows();
    }
    if (config.rdf_table) {
      poly.rdf = rdf_from_table(*config.rdf_table);
    } else {
      Rng rng = make_stream(seed, kRadialStreamIndex, kRadialStreamKind);
      poly.rdf = radial_distribution(poly.coords, config.rdf, rng);
    }
    update_radial(D, poly.radial_blocks, poly.coords, *poly.rdf, config.rdf.box);
    poly.D_E = std::move(D);
  }
  return poly;
}

PolyatomicComplex build_polyatomic_complex(const AtomInventory &inventory, const PolyatomicConfig &config,
                                           std::uint64_t seed) {
  return build_polyatomic_complex(inventory.expand(), config, seed);
}

double coulomb_energy(double q_i, double q_j, double r) {
  if (!(r > 0.0))
    throw Error(ErrorCode::CoincidentAtoms, "Coulomb interaction at zero separation");
  return q_i * q_j / r;
}

void update_forces(Eigen::MatrixXcd &F, const std::vector<Eigen::Index> &blocks,
                   const std::vector<double> &charges, const std::vector<Eigen::Vector3d> &coords) {
  const std::size_t n = blocks.size();
  if (charges.size() != n || coords.size() != n)
    throw Error(ErrorCode::CoordinateCountMismatch, "charges/coordinates do not match the atom blocks");
  std::vector<Eigen::Index> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    offsets[i + 1] = offsets[i] + blocks[i];
  if (F.rows() != offsets[n] || F.cols() != offsets[n])
    throw Error(ErrorCode::DimensionMismatch, "force matrix does not match the atom blocks");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = (coords[i] - coords[j]).norm();
      if (!(r > 0.0))
        throw Error(ErrorCode::CoincidentAtoms,
                    "atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      const std::complex<double> v(coulomb_energy(charges[i], charges[j], r), 0.0);
      F.block(offsets[i], offsets[j], blocks[i], blocks[j]).setConstant(v);
      F.block(offsets[j], offsets[i], blocks[j], blocks[i]).setConstant(v);
    }
}

RdfResult radial_distribution(const std::vector<Eigen::Vector3d> &coords, const RdfParams &params, Rng &rng) {
  if (!(params.r_max > 0.0) || params.n_bins < 1 || params.n_samples < 0)
    throw Error(ErrorCode::BadHistogramParams, "RDF needs r_max > 0, n_bins >= 1 and n_samples >= 0");
  if (params.box && (!(*params.box > 0.0) || params.r_max > 0.5 * *params.box + 1e-12))
    throw Error(ErrorCode::BadHistogramParams, "periodic RDF needs 0 < r_max <= box / 2");
  const std::size_t n = coords.size();
  if (n < 2)
    throw Error(ErrorCode::InsufficientAtoms, "RDF needs at least two atoms");

  const double width = params.r_max / params.n_bins;
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(params.n_bins);
  std::vector<std::size_t> refs;
  if (params.n_samples == 0) {
    refs.resize(n);
    std::iota(refs.begin(), refs.end(), 0);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int s = 0; s < params.n_samples; ++s)
      refs.push_back(pick(rng));
  }
  for (std::size_t ref : refs)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == ref)
        continue;
      const double d = separation(coords[ref], coords[j], params.box).norm();
      if (d < params.r_max) {
        const auto bin = std::min<Eigen::Index>(static_cast<Eigen::Index>(d / width), params.n_bins - 1);
        counts[bin] += 1.0;
      }
    }

  const double volume = params.box ? std::pow(*params.box, 3)
                                   : 4.0 / 3.0 * std::numbers::pi * std::pow(params.r_max, 3);
  const double density = static_cast<double>(n - 1) / volume;
  RdfResult out;
  out.bin_width = width;
  out.r.resize(params.n_bins);
  out.g.resize(params.n_bins);
  for (int b = 0; b < params.n_bins; ++b) {
    const double lo = b * width;
    const double hi = lo + width;
    const double shell = 4.0 / 3.0 * std::numbers::pi * (hi * hi * hi - lo * lo * lo);
    out.r[b] = lo + 0.5 * width;
    out.g[b] = counts[b] / (static_cast<double>(refs.size()) * density * shell);
  }
  return out;
}

RdfResult rdf_from_table(const RdfTable &table) {
  if (table.empty())
    throw Error(ErrorCode::BadHistogramParams, "empty RDF table");
  RdfResult out;
  out.r.resize(static_cast<Eigen::Index>(table.size()));
  out.g.resize(static_cast<Eigen::Index>(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i) {
    out.r[static_cast<Eigen::Index>(i)] = table[i].first;
    out.g[static_cast<Eigen::Index>(i)] = table[i].second;
  }
  return out;
}

void update_radial(Eigen::MatrixXd &D_E, const std::vector<Eigen::Index> &blocks,
                   const std::vector<Eigen::Vector3d> &coords, const RdfResult &rdf,
                   const std::optional<double> &box) {
  const std::size_t n = blocks.size();
  if (coords.size() != n)
    throw Error(ErrorCode::CoordinateCountMismatch, "coordinates do not match the atom blocks");
  std::vector<Eigen::Index> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    offsets[i + 1] = offsets[i] + blocks[i];
  if (D_E.rows() != offsets[n] || D_E.cols() != offsets[n])
    throw Error(ErrorCode::DimensionMismatch, "radial matrix does not match the atom blocks");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = rdf.at(separation(coords[i], coords[j], box).norm());
      D_E.block(offsets[i], offsets[j], blocks[i], blocks[j]).setConstant(g);
      D_E.block(offsets[j], offsets[i], blocks[j], blocks[i]).setConstant(g);
    }
}

}  // namespace polycomplex
