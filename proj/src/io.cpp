//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polycomplex/dataset.hpp"
#include "polycomplex/error.hpp"

namespace polycomplex {

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string &path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path())
    fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw Error(ErrorCode::IoError, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec)
    throw Error(ErrorCode::IoError, "cannot move output into '" + path + "': " + ec.message());
}

XyzMolecule parse_xyz(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [](const std::string &msg, std::size_t line_no) {
    return Error(ErrorCode::UnparseableRow, "XYZ line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  if (!std::getline(in, line))
    throw Error(ErrorCode::Empty, "empty XYZ input");
  long count = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> count) || count < 1)
      throw fail("expected a positive atom count", 1);
  }
  XyzMolecule mol;
  std::getline(in, mol.comment);
  for (long i = 0; i < count; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 3;
    if (!std::getline(in, line))
      throw fail("missing atom row", line_no);
    std::istringstream ls(line);
    std::string symbol;
    double x = 0, y = 0, z = 0;
    if (!(ls >> symbol >> x >> y >> z))
      throw fail("expected 'symbol x y z'", line_no);
    mol.atoms.push_back(lookup(symbol));
    mol.coords_angstrom.emplace_back(x, y, z);
    mol.coords.emplace_back(Eigen::Vector3d(x, y, z) * kBohrPerAngstrom);
  }
  return mol;
}

XyzMolecule read_xyz(const std::string &path) { return parse_xyz(read_text_file(path)); }

RdfTable read_rdf_table(const std::string &path) {
  CsvTable csv = read_csv(path);
  if (csv.header.size() != 2)
    throw Error(ErrorCode::UnparseableRow, "RDF table needs exactly two columns (r, g)");
  RdfTable table;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    try {
      const double r = std::stod(csv.rows[i][0]);
      const double g = std::stod(csv.rows[i][1]);
      table.emplace_back(r, g);
    } catch (const std::exception &) {
      throw Error(ErrorCode::UnparseableRow, "RDF table line " + std::to_string(csv.lines[i]) + " is not numeric",
                  csv.lines[i]);
    }
  }
  if (table.empty())
    throw Error(ErrorCode::Empty, "RDF table has no rows");
  return table;
}

}  // namespace polycomplex
