//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/atomic.hpp"
#include "polycomplex/smiles.hpp"

namespace polycomplex {

/// Length conversion for XYZ input.
inline constexpr double kBohrPerAngstrom = 1.0 / 0.529177210903;

struct RdfParams {
  double r_max = 5.0;  // bohr
  int n_bins = 50;
  int n_samples = 0;   // reference picks; 0 = every atom once
  std::optional<double> box;  // cubic periodic box edge (bohr)
};

struct RdfResult {
  Eigen::VectorXd r;  // bin centres, or table abscissae
  Eigen::VectorXd g;
  double bin_width = 0.0;  // 0 for an external table

  /// g at distance d: histogram bin containing d, or the nearest table row.
  double at(double d) const;
};

using RdfTable = std::vector<std::pair<double, double>>;

struct PolyatomicConfig {
  AtomicConfig atomic;
  bool using_force_model = false;
  bool using_radial = false;
  RdfParams rdf;
  std::optional<RdfTable> rdf_table;
};

struct PolyatomicComplex {
  Complex C;
  std::vector<ElectronCell> E;
  std::optional<Eigen::MatrixXcd> F;
  std::optional<Eigen::MatrixXd> D_E;
  std::vector<ElementRecord> atoms;          // canonical order
  std::vector<std::size_t> input_index;      // canonical position -> input position
  std::vector<Eigen::Vector3d> coords;       // bohr, canonical order
  bool default_coords = true;
  std::vector<std::size_t> cell_offsets;     // cells of atom i: [offsets[i], offsets[i+1])
  std::vector<Eigen::Index> force_blocks;    // P_i + N_i
  std::vector<Eigen::Index> radial_blocks;   // electron cells of atom i
  std::optional<RdfResult> rdf;
};

/// Canonical atom order: (Z, N, E), then coordinates lexicographically, then
/// input position. Returns input positions in canonical order.
std::vector<std::size_t> canonical_order(const std::vector<ElementRecord> &atoms,
                                         const std::vector<Eigen::Vector3d> *coords = nullptr);

/// Throws EmptySystem or CoordinateCountMismatch. Coordinates are in bohr;
/// when absent, atoms sit on the x axis 1 bohr apart in canonical order.
PolyatomicComplex build_polyatomic_complex(const std::vector<ElementRecord> &atoms,
                                           const PolyatomicConfig &config, std::uint64_t seed,
                                           const std::vector<Eigen::Vector3d> *coords = nullptr);

PolyatomicComplex build_polyatomic_complex(const AtomInventory &inventory, const PolyatomicConfig &config,
                                           std::uint64_t seed);

/// Coulomb update: off-diagonal block (i, j) filled with Z_i Z_j / r_ij
/// (hartree, atomic units). Diagonal blocks are untouched.
void update_forces(Eigen::MatrixXcd &F, const std::vector<Eigen::Index> &blocks,
                   const std::vector<double> &charges, const std::vector<Eigen::Vector3d> &coords);

double coulomb_energy(double q_i, double q_j, double r);

/// Monte-Carlo radial distribution function normalised by the ideal-gas shell
/// population. Throws InsufficientAtoms or BadHistogramParams.
RdfResult radial_distribution(const std::vector<Eigen::Vector3d> &coords, const RdfParams &params, Rng &rng);

RdfResult rdf_from_table(const RdfTable &table);

/// Fills off-diagonal blocks (i, j) of D_E with g(r_ij).
void update_radial(Eigen::MatrixXd &D_E, const std::vector<Eigen::Index> &blocks,
                   const std::vector<Eigen::Vector3d> &coords, const RdfResult &rdf,
                   const std::optional<double> &box = std::nullopt);

}  // namespace polycomplex
