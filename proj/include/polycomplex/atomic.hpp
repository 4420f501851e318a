//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/complex.hpp"
#include "polycomplex/elements.hpp"

namespace polycomplex {

using Rng = std::mt19937_64;

/// RNG stream keyed by (seed, index, kind) so that per-atom work is
/// independent of scheduling order.
Rng make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t kind);

enum class ForceMatrixMode { Gue, Provided };

struct AtomicConfig {
  int proton_dim = 3;
  int neutron_dim = 3;
  int electron_dim = 0;
  std::optional<int> dim_range;  // when set, every particle gets cells of dims 0..d
  int samples_per_cell = 8;
  double radius_p_fm = 1.0;
  double radius_n_fm = 0.8;
  double radius_e_fm = 2.8;  // strict upper bound for electron samples
  ForceMatrixMode force_matrix_mode = ForceMatrixMode::Gue;
  double bohr_radius = 1.0;  // a0 for the default 1s orbital, atomic units

  /// Throws ConfigError on negative dimensions, zero samples or radii <= 0.
  void validate() const;
};

struct AtomSpec {
  int protons = 0;
  int neutrons = 0;
  int electrons = 0;

  static AtomSpec from(const ElementRecord &record) {
    return {record.atomic_number, record.neutrons, record.electrons};
  }
  int particle_total() const noexcept { return protons + neutrons + electrons; }
};

/// Radial wavefunction r -> psi(r) for a spherically symmetric orbital.
struct Wavefunction {
  std::string name;
  double a0 = 1.0;
  std::function<double(double)> psi;

  static Wavefunction hydrogen_1s(double a0 = 1.0);
};

/// Integral of |psi|^2 over R^3.
double wavefunction_norm(const Wavefunction &w);
/// <r> = integral of r |psi|^2 4 pi r^2 dr (1.5 a0 for the 1s orbital).
double radial_expectation(const Wavefunction &w);

struct ElectronCell {
  CellId cell = 0;
  Wavefunction wavefunction;
  double expected_r = 0.0;
};

struct AtomicComplex {
  AtomSpec spec;
  Complex K;
  std::vector<ElectronCell> A_E;
  Eigen::MatrixXcd D_F;
  Eigen::MatrixXd D_E;
  std::vector<CellId> proton_cells;
  std::vector<CellId> neutron_cells;
  std::vector<CellId> electron_cells;
};

/// `count` points uniformly on the sphere S^dim of the given radius, as rows
/// of a count x (dim + 1) matrix.
Eigen::MatrixXd sample_sphere(int dim, double radius, int count, Rng &rng);

/// GUE: H = (G + G^H) / 2 with G entries having independent N(0,1) real and
/// imaginary parts. Provided: `provided` is validated Hermitian and returned.
Eigen::MatrixXcd init_force_matrix(int size, ForceMatrixMode mode, Rng &rng,
                                   const Eigen::MatrixXcd *provided = nullptr);

/// Refreshes row and column e of D_E from the electrons' radial expectations.
void update_distances(Eigen::MatrixXd &D_E, const std::vector<ElectronCell> &electrons, std::size_t e);

struct AtomicBuildOptions {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // per-atom stream index
  CellId first_id = 0;
  int owner = -1;
  const Eigen::MatrixXcd *provided_force = nullptr;
};

AtomicComplex build_atomic_complex(const AtomSpec &spec, const AtomicConfig &config,
                                   const AtomicBuildOptions &options = {});

}  // namespace polycomplex
