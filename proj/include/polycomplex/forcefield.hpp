//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/complex.hpp"
#include "polycomplex/elements.hpp"
#include "polycomplex/smiles.hpp"

namespace polycomplex {

struct NeighborhoodMember {
  CellId id = 0;
  int sign = 0;  // summed orientation of the incidence
  bool same_orientation = false;
};

struct NeighborhoodSet {
  CellId center = 0;
  std::vector<NeighborhoodMember> members;  // ascending id

  std::set<CellId> ids() const;
};

/// All (k-1)-cells incident to the k-cell `center`, optionally restricted to
/// the given kinds. Throws UnknownCell.
NeighborhoodSet incident_neighborhood(const Complex &complex, CellId center,
                                      const std::optional<std::set<CellKind>> &kinds = std::nullopt);

/// Atom skeleton: one AtomAggregate 0-cell per atom (id = atom index, with a
/// "Z" attribute) plus one 1-cell per bond.
Complex atom_skeleton(const std::vector<ElementRecord> &atoms,
                      const std::vector<std::pair<std::size_t, std::size_t>> &bonds = {});
Complex atom_skeleton(const MolecularGraph &graph);

using Coordinates = std::map<CellId, Eigen::Vector3d>;

/// Sup metric: the largest pairwise Euclidean distance inside the tuple.
double sup_metric(const std::vector<Eigen::Vector3d> &points);

/// Faces A_i of the cell `center` such that d(A_i, A_j) <= r for every face
/// A_j of the same cell. Throws UnknownCell or NoCoordinates.
std::set<CellId> env_set(const Complex &complex, CellId center, double r, const Coordinates &coords);

/// All n-tuples (ascending ids) of 0-cells whose sup-metric diameter is < r.
std::vector<std::vector<CellId>> interaction_set(const Complex &complex, int n, double r, const Coordinates &coords);

struct BondParams {
  double k_r = 0.0;
  double r_eq = 0.0;
};
struct AngleParams {
  double k_theta = 0.0;
  double theta_eq = 0.0;  // radians
};
struct DihedralParams {
  double k_t = 0.0;
  double n = 1.0;
  double gamma = 0.0;
};
struct LJParams {
  double A = 0.0;
  double B = 0.0;
};

/// Element-pair keys are ordered (lower Z first).
struct PotentialParams {
  std::map<std::pair<int, int>, BondParams> bond;
  std::optional<BondParams> bond_default;
  std::map<int, AngleParams> angle;  // keyed by vertex Z
  std::optional<AngleParams> angle_default;
  std::optional<DihedralParams> dihedral;
  std::map<std::pair<int, int>, LJParams> lj;
  std::optional<LJParams> lj_default;
  std::map<int, double> charges;
  double charge_default = 0.0;
  double epsilon = 0.07957747154594767;  // 1 / (4 pi): Coulomb in atomic units
  double r_bond = 1.6;
  double r_angle = 2.6;
  double r_dih = 4.0;
  double r_nb = 4.0;
  bool use_graph_bonds = false;  // bonds from the skeleton's 1-cells

  void validate() const;
};

/// Section/key text format, see README.
PotentialParams parse_potential_params(std::string_view text);
PotentialParams load_potential_params(const std::string &path);

struct PotentialBreakdown {
  double bond = 0.0;
  double angle = 0.0;
  double dihedral = 0.0;
  double lennard_jones = 0.0;
  double coulomb = 0.0;
  double total = 0.0;
  std::size_t n_bond = 0, n_angle = 0, n_dihedral = 0, n_nonbonded = 0;
};

double separation(const Eigen::Vector3d &a, const Eigen::Vector3d &b);
/// Angle at `vertex` between the two other points, radians.
double bend_angle(const Eigen::Vector3d &a, const Eigen::Vector3d &vertex, const Eigen::Vector3d &c);
/// Torsion angle of the path a-b-c-d, radians in (-pi, pi].
double torsion_angle(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const Eigen::Vector3d &c,
                     const Eigen::Vector3d &d);

/// V_total = bonds + angles + dihedrals + non-bonded (LJ + Coulomb). Atoms are
/// visited in a canonical order, so relabelling atoms never changes the sum.
/// Throws NoCoordinates, CoincidentAtoms or MissingParams.
PotentialBreakdown classical_potential(const Complex &skeleton, const Coordinates &coords,
                                       const PotentialParams &params);

/// Analytic gradient of the bond term, one row per 0-cell in ascending id.
Eigen::MatrixXd bond_gradient(const Complex &skeleton, const Coordinates &coords, const PotentialParams &params);

}  // namespace polycomplex
