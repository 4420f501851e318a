//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/forcefield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "polycomplex/error.hpp"
#include "polycomplex/io.hpp"

namespace polycomplex {

std::set<CellId> NeighborhoodSet::ids() const {
  std::set<CellId> out;
  for (const auto &m : members)
    out.insert(m.id);
  return out;
}

NeighborhoodSet incident_neighborhood(const Complex &complex, CellId center,
                                      const std::optional<std::set<CellKind>> &kinds) {
  NeighborhoodSet set;
  set.center = center;
  std::map<CellId, int> signs;
  for (const auto &[id, sign] : complex.boundary_of(center))
    signs[id] += sign;
  for (const auto &[id, sign] : signs) {
    if (kinds && !kinds->count(complex.cell(id).kind))
      continue;
    set.members.push_back({id, sign, sign > 0});
  }
  return set;
}

Complex atom_skeleton(const std::vector<ElementRecord> &atoms,
                      const std::vector<std::pair<std::size_t, std::size_t>> &bonds) {
  Complex k;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Cell c;
    c.id = static_cast<CellId>(i);
    c.dim = 0;
    c.kind = CellKind::AtomAggregate;
    c.owner = static_cast<int>(i);
    c.attributes["Z"] = atoms[i].atomic_number;
    c.attributes["N"] = atoms[i].neutrons;
    c.attributes["E"] = atoms[i].electrons;
    k.attach(std::move(c));
  }
  CellId next = static_cast<CellId>(atoms.size());
  for (const auto &[a, b] : bonds) {
    if (a >= atoms.size() || b >= atoms.size() || a == b)
      throw Error(ErrorCode::IndexOutOfRange, "bond endpoint outside the atom list");
    Cell c;
    c.id = next++;
    c.dim = 1;
    c.kind = CellKind::AtomAggregate;
    GlueMap map;
    map.targets = {{static_cast<CellId>(a), 0}, {static_cast<CellId>(b), 0}};
    k.attach(std::move(c), std::move(map));
  }
  return k;
}

Complex atom_skeleton(const MolecularGraph &graph) {
  std::vector<ElementRecord> atoms;
  for (const auto &a : graph.atoms)
    atoms.push_back(lookup(a.symbol, a.isotope, a.charge));
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (const auto &b : graph.bonds)
    bonds.emplace_back(b.a, b.b);
  return atom_skeleton(atoms, bonds);
}

double sup_metric(const std::vector<Eigen::Vector3d> &points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      d = std::max(d, (points[i] - points[j]).norm());
  return d;
}

namespace {

const Eigen::Vector3d &coord_of(const Coordinates &coords, CellId id) {
  auto it = coords.find(id);
  if (it == coords.end())
    throw Error(ErrorCode::NoCoordinates, "no coordinates for cell " + std::to_string(id));
  return it->second;
}

}  // namespace

std::set<CellId> env_set(const Complex &complex, CellId center, double r, const Coordinates &coords) {
  std::set<CellId> faces = incident_neighborhood(complex, center).ids();
  // unsigned incidence still counts
  for (const auto &[id, sign] : complex.boundary_of(center))
    faces.insert(id);
  std::set<CellId> out;
  for (CellId i : faces) {
    bool ok = true;
    for (CellId j : faces)
      if ((coord_of(coords, i) - coord_of(coords, j)).norm() > r) {
        ok = false;
        break;
      }
    if (ok)
      out.insert(i);
  }
  return out;
}

namespace {

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F &&f) {
  if (k == 0 || k > n)
    return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<std::vector<CellId>> interaction_set(const Complex &complex, int n, double r, const Coordinates &coords) {
  std::vector<std::vector<CellId>> out;
  if (n < 1)
    return out;
  std::vector<CellId> atoms;
  for (std::size_t i : complex.cells_of_dim(0))
    atoms.push_back(complex.cells()[i].id);
  std::sort(atoms.begin(), atoms.end());
  std::vector<Eigen::Vector3d> pos;
  for (CellId id : atoms)
    pos.push_back(coord_of(coords, id));
  for_each_combination(atoms.size(), static_cast<std::size_t>(n), [&](const std::vector<std::size_t> &idx) {
    std::vector<Eigen::Vector3d> pts;
    for (auto i : idx)
      pts.push_back(pos[i]);
    if (sup_metric(pts) < r) {
      std::vector<CellId> tuple;
      for (auto i : idx)
        tuple.push_back(atoms[i]);
      out.push_back(std::move(tuple));
    }
  });
  return out;
}

void PotentialParams::validate() const {
  if (!(r_bond > 0) || !(r_angle > 0) || !(r_dih > 0) || !(r_nb > 0))
    throw Error(ErrorCode::ConfigError, "force-model thresholds must be positive");
  if (!(epsilon > 0))
    throw Error(ErrorCode::ConfigError, "permittivity must be positive");
}

namespace {

std::pair<int, int> pair_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

int z_from_token(const std::string &token) {
  auto z = atomic_number_of(token);
  if (!z)
    throw Error(ErrorCode::ConfigError, "unknown element '" + token + "' in force-model parameters");
  return *z;
}

std::vector<double> numbers(const std::string &value, std::size_t expected, const std::string &where) {
  std::istringstream in(value);
  std::vector<double> out;
  double v = 0;
  while (in >> v)
    out.push_back(v);
  if (!in.eof() || out.size() != expected)
    throw Error(ErrorCode::ConfigError, where + ": expected " + std::to_string(expected) + " numbers");
  return out;
}

}  // namespace

PotentialParams parse_potential_params(std::string_view text) {
  PotentialParams p;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  constexpr double deg = std::numbers::pi / 180.0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const std::string where = "params line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::ConfigError, where + ": malformed section header", line_no);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError, where + ": expected key = value", line_no);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto pair_of = [&](const std::string &k) {
      auto dash = k.find('-');
      if (dash == std::string::npos)
        throw Error(ErrorCode::ConfigError, where + ": expected an element pair like C-H", line_no);
      return pair_key(z_from_token(k.substr(0, dash)), z_from_token(k.substr(dash + 1)));
    };
    if (section == "general") {
      if (key == "use_graph_bonds")
        p.use_graph_bonds = value == "true" || value == "1";
      else {
        const double v = numbers(value, 1, where)[0];
        if (key == "epsilon")
          p.epsilon = v;
        else if (key == "r_bond")
          p.r_bond = v;
        else if (key == "r_angle")
          p.r_angle = v;
        else if (key == "r_dih")
          p.r_dih = v;
        else if (key == "r_nb")
          p.r_nb = v;
        else
          throw Error(ErrorCode::ConfigError, where + ": unknown key '" + key + "'", line_no);
      }
    } else if (section == "bond") {
      auto v = numbers(value, 2, where);
      BondParams b{v[0], v[1]};
      if (key == "default")
        p.bond_default = b;
      else
        p.bond[pair_of(key)] = b;
    } else if (section == "angle") {
      auto v = numbers(value, 2, where);
      AngleParams a{v[0], v[1] * deg};
      if (key == "default")
        p.angle_default = a;
      else
        p.angle[z_from_token(key)] = a;
    } else if (section == "dihedral") {
      auto v = numbers(value, 3, where);
      if (key != "default")
        throw Error(ErrorCode::ConfigError, where + ": dihedral parameters take only 'default'", line_no);
      p.dihedral = DihedralParams{v[0], v[1], v[2] * deg};
    } else if (section == "lj") {
      auto v = numbers(value, 2, where);
      LJParams l{v[0], v[1]};
      if (key == "default")
        p.lj_default = l;
      else
        p.lj[pair_of(key)] = l;
    } else if (section == "charges") {
      const double v = numbers(value, 1, where)[0];
      if (key == "default")
        p.charge_default = v;
      else
        p.charges[z_from_token(key)] = v;
    } else {
      throw Error(ErrorCode::ConfigError, where + ": key outside a known section", line_no);
    }
  }
  p.validate();
  return p;
}

PotentialParams load_potential_params(const std::string &path) {
  return parse_potential_params(read_text_file(path));
}

double separation(const Eigen::Vector3d &a, const Eigen::Vector3d &b) { return (a - b).norm(); }

double bend_angle(const Eigen::Vector3d &a, const Eigen::Vector3d &vertex, const Eigen::Vector3d &c) {
  const Eigen::Vector3d u = a - vertex;
  const Eigen::Vector3d w = c - vertex;
  if (u.squaredNorm() == 0.0 || w.squaredNorm() == 0.0)
    throw Error(ErrorCode::CoincidentAtoms, "angle with coincident atoms");
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

double torsion_angle(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const Eigen::Vector3d &c,
                     const Eigen::Vector3d &d) {
  const Eigen::Vector3d b1 = b - a;
  const Eigen::Vector3d b2 = c - b;
  const Eigen::Vector3d b3 = d - c;
  if (b2.squaredNorm() == 0.0)
    throw Error(ErrorCode::CoincidentAtoms, "dihedral with coincident central atoms");
  const Eigen::Vector3d n1 = b1.cross(b2);
  const Eigen::Vector3d n2 = b2.cross(b3);
  const Eigen::Vector3d m1 = n1.cross(b2.normalized());
  return std::atan2(m1.dot(n2), n1.dot(n2));
}

namespace {

struct Atom {
  CellId id;
  int z;
  Eigen::Vector3d x;
};

std::vector<Atom> canonical_atoms(const Complex &skeleton, const Coordinates &coords) {
  std::vector<Atom> atoms;
  for (std::size_t i : skeleton.cells_of_dim(0)) {
    const Cell &c = skeleton.cells()[i];
    auto z = c.attributes.find("Z");
    atoms.push_back({c.id, z == c.attributes.end() ? 0 : static_cast<int>(z->second), coord_of(coords, c.id)});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom &a, const Atom &b) {
    if (a.z != b.z)
      return a.z < b.z;
    if (a.x != b.x)
      return std::lexicographical_compare(a.x.data(), a.x.data() + 3, b.x.data(), b.x.data() + 3);
    return a.id < b.id;
  });
  return atoms;
}

std::vector<std::pair<std::size_t, std::size_t>> bond_pairs(const Complex &skeleton, const std::vector<Atom> &atoms,
                                                            const PotentialParams &params) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (params.use_graph_bonds) {
    std::map<CellId, std::size_t> pos;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      pos[atoms[i].id] = i;
    for (std::size_t ci : skeleton.cells_of_dim(1)) {
      std::set<CellId> ends;
      for (const auto &[id, sign] : skeleton.boundary_of(skeleton.cells()[ci].id))
        ends.insert(id);
      if (ends.size() != 2)
        continue;
      std::size_t a = pos.at(*ends.begin()), b = pos.at(*ends.rbegin());
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (separation(atoms[i].x, atoms[j].x) < params.r_bond)
        out.emplace_back(i, j);
  return out;
}

const BondParams &bond_params(const PotentialParams &p, int za, int zb) {
  auto it = p.bond.find(pair_key(za, zb));
  if (it != p.bond.end())
    return it->second;
  if (p.bond_default)
    return *p.bond_default;
  throw Error(ErrorCode::MissingParams, "no bond parameters for Z pair " + std::to_string(za) + "-" + std::to_string(zb));
}

const AngleParams &angle_params(const PotentialParams &p, int z_vertex) {
  auto it = p.angle.find(z_vertex);
  if (it != p.angle.end())
    return it->second;
  if (p.angle_default)
    return *p.angle_default;
  throw Error(ErrorCode::MissingParams, "no angle parameters for vertex Z " + std::to_string(z_vertex));
}

const LJParams &lj_params(const PotentialParams &p, int za, int zb) {
  auto it = p.lj.find(pair_key(za, zb));
  if (it != p.lj.end())
    return it->second;
  if (p.lj_default)
    return *p.lj_default;
  throw Error(ErrorCode::MissingParams, "no Lennard-Jones parameters for Z pair " + std::to_string(za) + "-" +
                                            std::to_string(zb));
}

double charge_of(const PotentialParams &p, int z) {
  auto it = p.charges.find(z);
  return it == p.charges.end() ? p.charge_default : it->second;
}

void check_distinct(const std::vector<Atom> &atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (separation(atoms[i].x, atoms[j].x) == 0.0)
        throw Error(ErrorCode::CoincidentAtoms,
                    "cells " + std::to_string(atoms[i].id) + " and " + std::to_string(atoms[j].id) + " coincide");
}

}  // namespace

PotentialBreakdown classical_potential(const Complex &skeleton, const Coordinates &coords,
                                       const PotentialParams &params) {
  params.validate();
  const auto atoms = canonical_atoms(skeleton, coords);
  check_distinct(atoms);
  PotentialBreakdown out;

  for (const auto &[i, j] : bond_pairs(skeleton, atoms, params)) {
    const BondParams &b = bond_params(params, atoms[i].z, atoms[j].z);
    const double dr = separation(atoms[i].x, atoms[j].x) - b.r_eq;
    out.bond += b.k_r * dr * dr;
    ++out.n_bond;
  }

  for_each_combination(atoms.size(), 3, [&](const std::vector<std::size_t> &t) {
    std::vector<Eigen::Vector3d> pts{atoms[t[0]].x, atoms[t[1]].x, atoms[t[2]].x};
    if (!(sup_metric(pts) < params.r_angle))
      return;
    // the vertex is the atom opposite the longest side
    const std::array<double, 3> opposite{separation(pts[1], pts[2]), separation(pts[0], pts[2]),
                                         separation(pts[0], pts[1])};
    const std::size_t v = static_cast<std::size_t>(std::max_element(opposite.begin(), opposite.end()) - opposite.begin());
    const std::size_t a = (v + 1) % 3, c = (v + 2) % 3;
    const AngleParams &ap = angle_params(params, atoms[t[v]].z);
    const double d = bend_angle(pts[a], pts[v], pts[c]) - ap.theta_eq;
    out.angle += ap.k_theta * d * d;
    ++out.n_angle;
  });

  for_each_combination(atoms.size(), 4, [&](const std::vector<std::size_t> &q) {
    std::vector<Eigen::Vector3d> pts{atoms[q[0]].x, atoms[q[1]].x, atoms[q[2]].x, atoms[q[3]].x};
    if (!(sup_metric(pts) < params.r_dih))
      return;
    if (!params.dihedral)
      throw Error(ErrorCode::MissingParams, "dihedral quadruples present but no dihedral parameters");
    // shortest Hamiltonian path through the four atoms
    std::array<std::size_t, 4> perm{0, 1, 2, 3}, best{};
    double best_len = std::numeric_limits<double>::infinity();
    do {
      if (perm[0] > perm[3])
        continue;
      const double len = separation(pts[perm[0]], pts[perm[1]]) + separation(pts[perm[1]], pts[perm[2]]) +
                         separation(pts[perm[2]], pts[perm[3]]);
      if (len < best_len) {
        best_len = len;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double phi = torsion_angle(pts[best[0]], pts[best[1]], pts[best[2]], pts[best[3]]);
    const DihedralParams &dp = *params.dihedral;
    out.dihedral += dp.k_t * (1.0 + std::cos(dp.n * phi - dp.gamma));
    ++out.n_dihedral;
  });

  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r = separation(atoms[i].x, atoms[j].x);
      if (!(r > params.r_nb))
        continue;
      const LJParams &lj = lj_params(params, atoms[i].z, atoms[j].z);
      const double r6 = std::pow(r, 6);
      out.lennard_jones += lj.A / (r6 * r6) - lj.B / r6;
      out.coulomb += charge_of(params, atoms[i].z) * charge_of(params, atoms[j].z) /
                     (4.0 * std::numbers::pi * params.epsilon * r);
      ++out.n_nonbonded;
    }
  out.total = out.bond + out.angle + out.dihedral + out.lennard_jones + out.coulomb;
  return out;
}

Eigen::MatrixXd bond_gradient(const Complex &skeleton, const Coordinates &coords, const PotentialParams &params) {
  params.validate();
  const auto atoms = canonical_atoms(skeleton, coords);
  check_distinct(atoms);
  std::vector<CellId> ids;
  for (const auto &a : atoms)
    ids.push_back(a.id);
  std::vector<CellId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  std::map<CellId, Eigen::Index> row;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    row[sorted[i]] = static_cast<Eigen::Index>(i);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(atoms.size()), 3);
  for (const auto &[i, j] : bond_pairs(skeleton, atoms, params)) {
    const BondParams &b = bond_params(params, atoms[i].z, atoms[j].z);
    const Eigen::Vector3d d = atoms[i].x - atoms[j].x;
    const double r = d.norm();
    const Eigen::Vector3d f = 2.0 * b.k_r * (r - b.r_eq) / r * d;
    g.row(row[atoms[i].id]) += f.transpose();
    g.row(row[atoms[j].id]) -= f.transpose();
  }
  return g;
}

}  // namespace polycomplex
