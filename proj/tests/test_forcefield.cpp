// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Geometry>
#include <numbers>
#include <random>

#include "forcefield_fixtures.hpp"
#include "polycomplex/error.hpp"
#include "polycomplex/forcefield.hpp"

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

PotentialParams bare() {
  PotentialParams p;
  p.r_bond = 1e-3;
  p.r_angle = 1e-3;
  p.r_dih = 1e-3;
  p.r_nb = 1e6;
  return p;
}

}  // namespace

TEST_CASE("incident neighborhoods") {
  const Complex k = atom_skeleton({lookup("H"), lookup("H"), lookup("O")}, {{0, 2}});
  CHECK(incident_neighborhood(k, 1).members.empty());  // isolated vertex
  const NeighborhoodSet bond = incident_neighborhood(k, 3);
  CHECK(bond.ids() == std::set<CellId>{0, 2});
  CHECK(bond.members[0].same_orientation == false);
  CHECK(bond.members[1].same_orientation == true);
  CHECK(incident_neighborhood(k, 3, std::set<CellKind>{CellKind::Proton}).members.empty());
  CHECK(code_of([&] { incident_neighborhood(k, 99); }) == ErrorCode::UnknownCell);
  CHECK(k.cell(2).attributes.at("Z") == 8.0);
}

TEST_CASE("interaction and environment sets") {
  const Complex line = atom_skeleton({lookup("C"), lookup("C"), lookup("C")}, {{0, 1}, {1, 2}});
  const Coordinates xs{{0, {0, 0, 0}}, {1, {1, 0, 0}}, {2, {2, 0, 0}}};
  const auto pairs = interaction_set(line, 2, 1.5, xs);
  CHECK(pairs == std::vector<std::vector<CellId>>{{0, 1}, {1, 2}});
  CHECK(interaction_set(line, 2, 0.5, xs).empty());
  CHECK(interaction_set(line, 4, 10.0, xs).empty());
  CHECK(interaction_set(line, 3, 2.5, xs).size() == 1);
  CHECK(env_set(line, 3, 1.5, xs) == std::set<CellId>{0, 1});
  CHECK(env_set(line, 3, 0.5, xs).empty());
  CHECK(env_set(line, 0, 0.5, xs).empty());
  const Coordinates missing{{0, {0, 0, 0}}};
  CHECK(code_of([&] { interaction_set(line, 2, 1.5, missing); }) == ErrorCode::NoCoordinates);
  CHECK(sup_metric({{0, 0, 0}, {3, 4, 0}, {1, 0, 0}}) == 5.0);
}

TEST_CASE("geometry helpers") {
  CHECK(bend_angle({1, 0, 0}, {0, 0, 0}, {0, 2, 0}) == std::numbers::pi / 2);
  CHECK(bend_angle({1, 0, 0}, {0, 0, 0}, {-1, 0, 0}) == std::numbers::pi);
  CHECK(torsion_angle({1, 0, 0}, {0, 0, 0}, {0, 0, 1}, {1, 0, 1}) == doctest::Approx(0.0));
  CHECK(std::abs(torsion_angle({1, 0, 0}, {0, 0, 0}, {0, 0, 1}, {-1, 0, 1})) == doctest::Approx(std::numbers::pi));
  CHECK(std::abs(torsion_angle({1, 0, 0}, {0, 0, 0}, {0, 0, 1}, {0, 1, 1})) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("diatomic at its equilibrium length is Coulomb only") {
  const Complex k = atom_skeleton({lookup("H"), lookup("F")});
  const Coordinates xs{{0, {0, 0, 0}}, {1, {0.92, 0, 0}}};
  PotentialParams p = bare();
  p.r_bond = 1.6;
  p.r_nb = 0.5;
  p.bond[{1, 9}] = {500.0, 0.92};
  p.lj_default = LJParams{0.0, 0.0};
  p.charges = {{1, 0.4}, {9, -0.4}};
  const PotentialBreakdown v = classical_potential(k, xs, p);
  CHECK(v.n_bond == 1);
  CHECK(v.bond == 0.0);
  CHECK(v.coulomb == doctest::Approx(-0.16 / (4 * std::numbers::pi * p.epsilon * 0.92)).epsilon(1e-14));
  CHECK(v.total == v.coulomb);
}

TEST_CASE("angle at its equilibrium value contributes zero") {
  const Complex k = atom_skeleton({lookup("H"), lookup("O"), lookup("H")});
  const Coordinates xs{{0, {1, 0, 0}}, {1, {0, 0, 0}}, {2, {0, 1, 0}}};
  PotentialParams p = bare();
  p.r_angle = 2.0;
  p.angle[8] = {80.0, std::numbers::pi / 2};
  p.lj_default = LJParams{};
  const PotentialBreakdown v = classical_potential(k, xs, p);
  CHECK(v.n_angle == 1);
  CHECK(v.angle == 0.0);
}

TEST_CASE("Lennard-Jones vanishes at its root") {
  const double A = 4.0e5, B = 600.0;
  const double r0 = std::pow(A / B, 1.0 / 6.0);
  const Complex k = atom_skeleton({lookup("Ar"), lookup("Ar")});
  const Coordinates xs{{0, {0, 0, 0}}, {1, {r0, 0, 0}}};
  PotentialParams p = bare();
  p.r_nb = 1.0;
  p.lj_default = LJParams{A, B};
  const PotentialBreakdown v = classical_potential(k, xs, p);
  CHECK(std::abs(v.lennard_jones) < 1e-12 * B / std::pow(r0, 6));
  CHECK(v.coulomb == 0.0);
}

TEST_CASE("harmonic terms vanish at an equilibrium geometry") {
  // symmetric water: both O-H lengths are bit-identical
  const Eigen::Vector3d o(0, 0, 0), h1(0.7586, 0.5043, 0), h2(-0.7586, 0.5043, 0);
  const Complex k = atom_skeleton({lookup("O"), lookup("H"), lookup("H")});
  const Coordinates xs{{0, o}, {1, h1}, {2, h2}};
  PotentialParams p = bare();
  p.r_bond = 1.2;
  p.r_angle = 2.0;
  p.bond[{1, 8}] = {553.0, separation(o, h1)};
  p.angle[8] = {100.0, bend_angle(h1, o, h2)};
  p.lj_default = LJParams{};
  const PotentialBreakdown v = classical_potential(k, xs, p);
  CHECK(v.n_bond == 2);
  CHECK(v.n_angle == 1);
  CHECK(v.bond == 0.0);
  CHECK(v.angle == 0.0);
}

TEST_CASE("property: rigid motions, relabelling and the breakdown sum") {
  const auto atoms = testing::five_atoms();
  const Coordinates xs = testing::five_coords();
  const PotentialParams p = testing::five_params();
  const Complex k = atom_skeleton(atoms);
  const PotentialBreakdown v = classical_potential(k, xs, p);
  CHECK(v.n_bond > 0);
  CHECK(v.n_angle > 0);
  CHECK(v.n_dihedral > 0);
  CHECK(v.n_nonbonded > 0);
  const double sum = v.bond + v.angle + v.dihedral + v.lennard_jones + v.coulomb;
  CHECK(std::abs(sum - v.total) <= 1e-12 * std::abs(v.total));

  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Quaterniond q = Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized();
    const Eigen::Vector3d shift(5 * n(rng), 5 * n(rng), 5 * n(rng));
    Coordinates moved;
    for (const auto &[id, x] : xs)
      moved[id] = q * x + shift;
    CHECK(std::abs(classical_potential(k, moved, p).total - v.total) <= 1e-9 * std::abs(v.total));
  }

  // relabel: same positions and elements under a permutation of ids
  const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  std::vector<ElementRecord> relabelled(5);
  Coordinates rx;
  for (std::size_t i = 0; i < 5; ++i) {
    relabelled[perm[i]] = atoms[i];
    rx[static_cast<CellId>(perm[i])] = xs.at(static_cast<CellId>(i));
  }
  const PotentialBreakdown w = classical_potential(atom_skeleton(relabelled), rx, p);
  CHECK(w.total == v.total);
  CHECK(w.bond == v.bond);
  CHECK(w.dihedral == v.dihedral);
}

TEST_CASE("graph bonds override the distance rule") {
  const auto atoms = testing::five_atoms();
  PotentialParams p = testing::five_params();
  p.use_graph_bonds = true;
  const Complex chain = atom_skeleton(atoms, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const PotentialBreakdown v = classical_potential(chain, testing::five_coords(), p);
  CHECK(v.n_bond == 4);
  const Complex none = atom_skeleton(atoms);
  CHECK(classical_potential(none, testing::five_coords(), p).n_bond == 0);
}

TEST_CASE("bond gradient matches finite differences") {
  const Complex k = atom_skeleton({lookup("C"), lookup("O")});
  PotentialParams p = bare();
  p.r_bond = 2.0;
  p.bond[{6, 8}] = {570.0, 1.13};
  p.lj_default = LJParams{};
  const Coordinates xs{{0, {0.1, -0.2, 0.05}}, {1, {1.3, 0.1, -0.1}}};
  const Eigen::MatrixXd g = bond_gradient(k, xs, p);
  const double h = 1e-6;
  for (CellId a = 0; a < 2; ++a)
    for (int c = 0; c < 3; ++c) {
      Coordinates plus = xs, minus = xs;
      plus[a][c] += h;
      minus[a][c] -= h;
      const double fd = (classical_potential(k, plus, p).bond - classical_potential(k, minus, p).bond) / (2 * h);
      CHECK(std::abs(fd - g(a, c)) <= 1e-5 * std::max(1.0, std::abs(g(a, c))));
    }
}

TEST_CASE("force-model errors") {
  const Complex k = atom_skeleton({lookup("C"), lookup("O")});
  PotentialParams p = bare();
  p.r_bond = 2.0;
  p.lj_default = LJParams{};
  const Coordinates xs{{0, {0, 0, 0}}, {1, {1.2, 0, 0}}};
  CHECK(code_of([&] { classical_potential(k, xs, p); }) == ErrorCode::MissingParams);
  p.bond_default = BondParams{1.0, 1.0};
  CHECK(code_of([&] { classical_potential(k, {{0, {0, 0, 0}}, {1, {0, 0, 0}}}, p); }) == ErrorCode::CoincidentAtoms);
  CHECK(code_of([&] { classical_potential(k, {{0, {0, 0, 0}}}, p); }) == ErrorCode::NoCoordinates);
  PotentialParams bad = p;
  bad.epsilon = 0;
  CHECK(code_of([&] { classical_potential(k, xs, bad); }) == ErrorCode::ConfigError);
}

TEST_CASE("parameter file") {
  const PotentialParams p = parse_potential_params(R"(
# thresholds in angstrom
[general]
r_bond = 1.7
r_nb = 3.0
epsilon = 0.5
use_graph_bonds = true
[bond]
C-H = 340 1.09
default = 300 1.5
[angle]
C = 35 109.5
[dihedral]
default = 1.4 3 180
[lj]
H-C = 1e4 20
[charges]
O = -0.8
default = 0.1
)");
  CHECK(p.r_bond == 1.7);
  CHECK(p.r_nb == 3.0);
  CHECK(p.epsilon == 0.5);
  CHECK(p.use_graph_bonds);
  CHECK(p.bond.at({1, 6}).k_r == 340.0);
  CHECK(p.bond_default->r_eq == 1.5);
  CHECK(p.angle.at(6).theta_eq == doctest::Approx(109.5 * std::numbers::pi / 180));
  CHECK(p.dihedral->gamma == doctest::Approx(std::numbers::pi));
  CHECK(p.lj.at({1, 6}).A == 1e4);
  CHECK(p.charges.at(8) == -0.8);
  CHECK(p.charge_default == 0.1);
  CHECK_THROWS_AS(parse_potential_params("[bond]\nC-H = 1\n"), Error);
  CHECK_THROWS_AS(parse_potential_params("[bond]\nC-Qq = 1 2\n"), Error);
  CHECK_THROWS_AS(parse_potential_params("x = 1\n"), Error);
  CHECK_THROWS_AS(parse_potential_params("[general]\nr_nb = -1\n"), Error);
}
