//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/atomic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "polycomplex/error.hpp"

namespace polycomplex {

Rng make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t kind) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(kind)};
  return Rng(seq);
}

void AtomicConfig::validate() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::ConfigError, msg); };
  if (proton_dim < 0 || neutron_dim < 0 || electron_dim < 0)
    fail("particle dimensions must be non-negative");
  if (dim_range && *dim_range < 0)
    fail("dim_range must be non-negative");
  if (samples_per_cell < 1)
    fail("samples_per_cell must be at least 1");
  if (!(radius_p_fm > 0) || !(radius_n_fm > 0) || !(radius_e_fm > 0))
    fail("radii must be strictly positive");
  if (!(bohr_radius > 0))
    fail("bohr_radius must be strictly positive");
}

Wavefunction Wavefunction::hydrogen_1s(double a0) {
  const double norm = 1.0 / std::sqrt(std::numbers::pi * a0 * a0 * a0);
  return {"1s", a0, [a0, norm](double r) { return norm * std::exp(-r / a0); }};
}

namespace {

double integrate_radial(const Wavefunction &w, int power) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double r) {
    const double p = w.psi(r);
    return std::pow(r, power) * p * p * 4.0 * std::numbers::pi * r * r;
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

}  // namespace

double wavefunction_norm(const Wavefunction &w) { return integrate_radial(w, 0); }

double radial_expectation(const Wavefunction &w) { return integrate_radial(w, 1); }

Eigen::MatrixXd sample_sphere(int dim, double radius, int count, Rng &rng) {
  if (!(radius > 0.0))
    throw Error(ErrorCode::ZeroRadius, "sphere radius must be positive");
  if (dim < 1 || count < 1)
    throw Error(ErrorCode::InvalidArgument, "sample_sphere needs dim >= 1 and count >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd points(count, dim + 1);
  for (int i = 0; i < count; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j <= dim; ++j)
        points(i, j) = normal(rng);
      norm = points.row(i).norm();
    } while (norm < 1e-300);
    points.row(i) *= radius / norm;
  }
  return points;
}

Eigen::MatrixXcd init_force_matrix(int size, ForceMatrixMode mode, Rng &rng,
                                   const Eigen::MatrixXcd *provided) {
  if (size < 1)
    throw Error(ErrorCode::InvalidArgument, "force matrix size must be at least 1");
  if (mode == ForceMatrixMode::Provided) {
    if (!provided || provided->rows() != size || provided->cols() != size)
      throw Error(ErrorCode::NonHermitianProvided, "provided force matrix missing or of wrong shape");
    if (*provided != provided->adjoint())
      throw Error(ErrorCode::NonHermitianProvided, "provided force matrix is not Hermitian");
    return *provided;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  for (int i = 0; i < size; ++i)
    h(i, i) = {h(i, i).real(), 0.0};
  // enforce exact Hermitian symmetry bit for bit
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      h(j, i) = std::conj(h(i, j));
  return h;
}

void update_distances(Eigen::MatrixXd &D_E, const std::vector<ElectronCell> &electrons, std::size_t e) {
  const auto n = electrons.size();
  if (e >= n || static_cast<std::size_t>(D_E.rows()) != n || static_cast<std::size_t>(D_E.cols()) != n)
    throw Error(ErrorCode::IndexOutOfRange,
                "electron index " + std::to_string(e) + " outside D_E of size " + std::to_string(D_E.rows()));
  const auto i = static_cast<Eigen::Index>(e);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double d = j == e ? 0.0 : std::abs(electrons[e].expected_r - electrons[j].expected_r);
    D_E(i, jj) = d;
    D_E(jj, i) = d;
  }
}

namespace {

enum StreamKind : std::uint64_t { kProtonStream = 0, kNeutronStream = 1, kElectronStream = 2, kForceStream = 3 };

struct ParticleBuilder {
  Complex &K;
  CellId &next_id;
  int samples;
  int owner;

  // Adds one particle; returns the ids of its cells, lowest dimension first.
  std::vector<CellId> add(CellKind kind, const std::vector<int> &dims, double radius, double sample_radius,
                          Rng &rng) {
    std::vector<CellId> ids;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      Cell cell;
      cell.id = next_id++;
      cell.dim = dims[i];
      cell.kind = kind;
      cell.radius = radius;
      cell.owner = owner;
      if (cell.dim > 0)
        cell.points = sample_sphere(cell.dim, sample_radius, samples, rng);
      else
        cell.points.resize(0, 1);
      GlueMap map;
      if (i > 0) {
        // one cell per dimension: e^k attaches to e^(k-1) with degree 0 for
        // odd k and degree 1 for even k, so boundaries compose to zero
        const CellId prev = ids.back();
        if (cell.dim % 2 == 1)
          map.targets = {{prev, -1}, {prev, +1}};
        else
          map.targets = {{prev, +1}};
      }
      ids.push_back(cell.id);
      K.attach(std::move(cell), std::move(map));
    }
    return ids;
  }
};

std::vector<int> dims_for(const AtomicConfig &config, int single) {
  if (config.dim_range) {
    std::vector<int> dims(static_cast<std::size_t>(*config.dim_range) + 1);
    for (int d = 0; d <= *config.dim_range; ++d)
      dims[static_cast<std::size_t>(d)] = d;
    return dims;
  }
  return {single};
}

}  // namespace

AtomicComplex build_atomic_complex(const AtomSpec &spec, const AtomicConfig &config,
                                   const AtomicBuildOptions &options) {
  config.validate();
  if (spec.protons < 0 || spec.neutrons < 0 || spec.electrons < 0)
    throw Error(ErrorCode::InvalidArgument, "particle counts must be non-negative");
  if (spec.protons + spec.neutrons < 1)
    throw Error(ErrorCode::InvalidArgument, "an atom needs at least one nucleon");

  AtomicComplex atom;
  atom.spec = spec;
  CellId next_id = options.first_id;
  ParticleBuilder builder{atom.K, next_id, config.samples_per_cell, options.owner};

  Rng proton_rng = make_stream(options.seed, options.stream, kProtonStream);
  Rng neutron_rng = make_stream(options.seed, options.stream, kNeutronStream);
  Rng electron_rng = make_stream(options.seed, options.stream, kElectronStream);
  Rng force_rng = make_stream(options.seed, options.stream, kForceStream);

  const auto p_dims = dims_for(config, config.proton_dim);
  const auto n_dims = dims_for(config, config.neutron_dim);
  const auto e_dims = dims_for(config, config.electron_dim);

  for (int i = 0; i < spec.protons; ++i) {
    auto ids = builder.add(CellKind::Proton, p_dims, config.radius_p_fm, config.radius_p_fm, proton_rng);
    atom.proton_cells.insert(atom.proton_cells.end(), ids.begin(), ids.end());
  }
  for (int i = 0; i < spec.neutrons; ++i) {
    auto ids = builder.add(CellKind::Neutron, n_dims, config.radius_n_fm, config.radius_n_fm, neutron_rng);
    atom.neutron_cells.insert(atom.neutron_cells.end(), ids.begin(), ids.end());
  }

  const Wavefunction w = Wavefunction::hydrogen_1s(config.bohr_radius);
  const double expected_r = spec.electrons > 0 ? radial_expectation(w) : 0.0;
  for (int i = 0; i < spec.electrons; ++i) {
    // electron samples sit strictly inside the bound
    auto ids = builder.add(CellKind::Electron, e_dims, config.radius_e_fm, 0.5 * config.radius_e_fm,
                           electron_rng);
    atom.electron_cells.insert(atom.electron_cells.end(), ids.begin(), ids.end());
    for (CellId id : ids)
      atom.A_E.push_back({id, w, expected_r});
  }

  const auto n_e = static_cast<Eigen::Index>(atom.A_E.size());
  atom.D_E = Eigen::MatrixXd::Zero(n_e, n_e);
  for (std::size_t e = 0; e < atom.A_E.size(); ++e)
    update_distances(atom.D_E, atom.A_E, e);

  atom.D_F = init_force_matrix(spec.protons + spec.neutrons, config.force_matrix_mode, force_rng,
                               options.provided_force);

  // cross links between the top cells of the proton, neutron and electron parts
  const CellId *p_top = atom.proton_cells.empty() ? nullptr : &atom.proton_cells.back();
  const CellId *n_top = atom.neutron_cells.empty() ? nullptr : &atom.neutron_cells.back();
  const CellId *e_top = atom.electron_cells.empty() ? nullptr : &atom.electron_cells.back();
  if (p_top && n_top)
    atom.K.link(*p_top, *n_top, "phi_n");
  const CellId *before_e = n_top ? n_top : p_top;
  if (before_e && e_top)
    atom.K.link(*before_e, *e_top, "phi_e");
  return atom;
}

}  // namespace polycomplex
