//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycomplex/elements.hpp"

namespace polycomplex {

enum class BondOrder { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

struct GraphAtom {
  std::string symbol;  // capitalised element symbol
  std::optional<int> isotope;
  int charge = 0;
  bool aromatic = false;
  bool bracket = false;
  std::optional<int> explicit_h;  // bracket atoms only
  std::size_t position = 0;       // byte offset in the input
};

struct GraphBond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondOrder order = BondOrder::Single;
};

struct MolecularGraph {
  std::vector<GraphAtom> atoms;
  std::vector<GraphBond> bonds;

  std::vector<std::vector<std::size_t>> adjacency() const;
};

struct InventoryEntry {
  ElementRecord element;
  int count = 0;
};

/// Canonically ordered multiset of atoms, sorted by (Z, N, E).
struct AtomInventory {
  std::vector<InventoryEntry> entries;

  int total() const noexcept;
  /// One record per atom, in canonical order.
  std::vector<ElementRecord> expand() const;
  void add(const ElementRecord &record, int count = 1);
  /// Element counts keyed by symbol; isotopes are folded together.
  std::map<std::string, int> element_counts() const;
};

/// Parses a SMILES string. Stereo marks are accepted and discarded; dot
/// separated fragments land in one graph. Throws Error with the byte offset
/// of the offending character.
MolecularGraph parse_smiles(std::string_view smiles);

/// Implicit hydrogen count per atom (0 for bracket atoms).
std::vector<int> implicit_hydrogens(const MolecularGraph &graph);

AtomInventory atom_inventory(const MolecularGraph &graph, bool include_hydrogens = true);

inline AtomInventory atom_inventory(std::string_view smiles, bool include_hydrogens = true) {
  return atom_inventory(parse_smiles(smiles), include_hydrogens);
}

/// Parses a composition string such as "LuTaO4", "Ca(OH)2" or "CuSO4.5H2O".
AtomInventory parse_formula(std::string_view formula);

/// Hill-order formula string ("C2H6O").
std::string hill_formula(const AtomInventory &inventory);

}  // namespace polycomplex
