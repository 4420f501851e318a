//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polycomplex/elements.hpp"
#include "polycomplex/polyatomic.hpp"

namespace polycomplex {

/// Throws IoError.
std::string read_text_file(const std::string &path);
/// Writes through a temporary sibling file and renames it into place.
void write_text_file(const std::string &path, std::string_view content);

struct XyzMolecule {
  std::vector<ElementRecord> atoms;
  std::vector<Eigen::Vector3d> coords;            // bohr
  std::vector<Eigen::Vector3d> coords_angstrom;   // as written
  std::string comment;
};

/// XYZ format: count line, comment line, then "symbol x y z" rows in
/// angstrom. Coordinates are converted to bohr.
XyzMolecule parse_xyz(std::string_view text);
XyzMolecule read_xyz(const std::string &path);

/// Two-column CSV (r, g) with a header row.
RdfTable read_rdf_table(const std::string &path);

}  // namespace polycomplex
