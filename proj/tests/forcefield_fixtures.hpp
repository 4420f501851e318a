// SPDX-License-Identifier: Apache-2.0
// Shared force-model fixtures.
#pragma once

#include <cmath>
#include <numbers>

#include "polycomplex/forcefield.hpp"

namespace testing {

// Five atoms: a bent, slightly twisted H-C-C-O-H chain (angstrom).
inline std::vector<polycomplex::ElementRecord> five_atoms() {
  using polycomplex::lookup;
  return {lookup("H"), lookup("C"), lookup("C"), lookup("O"), lookup("H")};
}

inline polycomplex::Coordinates five_coords() {
  return {{0, {-1.02, 0.31, 0.05}},
          {1, {0.0, 0.0, 0.0}},
          {2, {1.51, 0.07, -0.12}},
          {3, {2.03, 1.39, 0.21}},
          {4, {2.97, 1.41, -0.33}}};
}

inline polycomplex::PotentialParams five_params() {
  polycomplex::PotentialParams p;
  p.bond_default = polycomplex::BondParams{300.0, 1.2};
  p.bond[{1, 6}] = {340.0, 1.09};
  p.bond[{6, 6}] = {310.0, 1.53};
  p.bond[{6, 8}] = {320.0, 1.43};
  p.bond[{1, 8}] = {553.0, 0.96};
  p.angle_default = polycomplex::AngleParams{50.0, 109.5 * std::numbers::pi / 180.0};
  p.dihedral = polycomplex::DihedralParams{1.4, 3.0, 0.0};
  p.lj_default = polycomplex::LJParams{5.0e4, 30.0};
  p.charges = {{1, 0.4}, {6, -0.2}, {8, -0.4}};
  p.r_bond = 1.6;
  p.r_angle = 2.6;
  p.r_dih = 4.0;
  p.r_nb = 2.4;
  return p;
}

}  // namespace testing
