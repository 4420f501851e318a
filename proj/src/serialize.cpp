//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/serialize.hpp"

#include "polycomplex/error.hpp"

namespace polycomplex {

using nlohmann::json;

namespace {

json matrix_json(const Eigen::MatrixXd &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json complex_matrix_json(const Eigen::MatrixXcd &m) {
  return {{"re", matrix_json(m.real())}, {"im", matrix_json(m.imag())}};
}

json cell_json(const Complex &complex, const Cell &cell) {
  json boundary = json::array();
  for (const auto &[id, sign] : complex.boundary_of(cell.id))
    boundary.push_back({{"id", id}, {"sign", sign}});
  json doc = {{"id", cell.id},
              {"dim", cell.dim},
              {"kind", std::string(to_string(cell.kind))},
              {"radius", cell.radius},
              {"owner", cell.owner},
              {"weight", cell.weight},
              {"boundary", std::move(boundary)},
              {"points", matrix_json(cell.points)}};
  if (!cell.attributes.empty())
    doc["attributes"] = cell.attributes;
  const auto &corr = complex.correspondence_of(cell.id);
  if (!corr.empty())
    doc["correspondence"] = corr;
  return doc;
}

}  // namespace

json to_json(const Complex &complex) {
  json cells = json::array();
  for (const auto &cell : complex.cells())
    cells.push_back(cell_json(complex, cell));
  json links = json::array();
  for (const auto &l : complex.links())
    links.push_back({{"from", l.from}, {"to", l.to}, {"label", l.label}});
  json counts = json::array();
  for (int k = 0; k <= complex.max_dim(); ++k)
    counts.push_back(complex.count(k));
  return {{"schema", kComplexSchema},
          {"cell_count", complex.size()},
          {"cells_per_dim", std::move(counts)},
          {"cells", std::move(cells)},
          {"links", std::move(links)}};
}

Complex complex_from_json(const json &doc) {
  try {
    if (doc.at("schema").get<std::string>() != kComplexSchema)
      throw Error(ErrorCode::InvalidArgument, "unsupported complex schema");
    Complex complex;
    for (const auto &c : doc.at("cells")) {
      Cell cell;
      cell.id = c.at("id").get<CellId>();
      cell.dim = c.at("dim").get<int>();
      cell.kind = cell_kind_from_string(c.at("kind").get<std::string>());
      cell.radius = c.at("radius").get<double>();
      cell.owner = c.at("owner").get<int>();
      cell.weight = c.at("weight").get<double>();
      const auto &pts = c.at("points");
      cell.points.resize(static_cast<Eigen::Index>(pts.size()), cell.dim + 1);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != static_cast<std::size_t>(cell.dim + 1))
          throw Error(ErrorCode::InvalidArgument, "point of wrong length in cell " + std::to_string(cell.id));
        for (std::size_t j = 0; j < pts[i].size(); ++j)
          cell.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i][j].get<double>();
      }
      if (c.contains("attributes"))
        cell.attributes = c.at("attributes").get<std::map<std::string, double>>();
      GlueMap map;
      for (const auto &b : c.at("boundary"))
        map.targets.push_back({b.at("id").get<CellId>(), b.at("sign").get<int>()});
      if (c.contains("correspondence"))
        map.correspondence = c.at("correspondence").get<std::map<std::string, std::string>>();
      complex.attach(std::move(cell), std::move(map));
    }
    for (const auto &l : doc.at("links"))
      complex.link(l.at("from").get<CellId>(), l.at("to").get<CellId>(), l.at("label").get<std::string>());
    return complex;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed complex document: ") + e.what());
  }
}

json to_json(const AtomicComplex &atom) {
  json electrons = json::array();
  for (const auto &e : atom.A_E)
    electrons.push_back({{"cell", e.cell}, {"wavefunction", e.wavefunction.name},
                         {"a0", e.wavefunction.a0}, {"expected_r", e.expected_r}});
  return {{"schema", kAtomicSchema},
          {"protons", atom.spec.protons},
          {"neutrons", atom.spec.neutrons},
          {"electrons", atom.spec.electrons},
          {"K", to_json(atom.K)},
          {"A_E", std::move(electrons)},
          {"D_F", complex_matrix_json(atom.D_F)},
          {"D_E", matrix_json(atom.D_E)}};
}

json to_json(const PolyatomicComplex &poly) {
  json atoms = json::array();
  for (std::size_t i = 0; i < poly.atoms.size(); ++i) {
    const auto &a = poly.atoms[i];
    atoms.push_back({{"symbol", a.symbol},
                     {"Z", a.atomic_number},
                     {"N", a.neutrons},
                     {"E", a.electrons},
                     {"coords", {poly.coords[i].x(), poly.coords[i].y(), poly.coords[i].z()}},
                     {"first_cell", poly.cell_offsets[i]},
                     {"cell_count", poly.cell_offsets[i + 1] - poly.cell_offsets[i]}});
  }
  json electrons = json::array();
  for (const auto &e : poly.E)
    electrons.push_back({{"cell", e.cell}, {"wavefunction", e.wavefunction.name},
                         {"a0", e.wavefunction.a0}, {"expected_r", e.expected_r}});
  json doc = {{"schema", kPolyatomicSchema},
              {"atoms", std::move(atoms)},
              {"default_coords", poly.default_coords},
              {"C", to_json(poly.C)},
              {"E", std::move(electrons)},
              {"F", poly.F ? complex_matrix_json(*poly.F) : json(nullptr)},
              {"D_E", poly.D_E ? matrix_json(*poly.D_E) : json(nullptr)}};
  if (poly.rdf) {
    std::vector<double> r(poly.rdf->r.data(), poly.rdf->r.data() + poly.rdf->r.size());
    std::vector<double> g(poly.rdf->g.data(), poly.rdf->g.data() + poly.rdf->g.size());
    doc["rdf"] = {{"r", r}, {"g", g}, {"bin_width", poly.rdf->bin_width}};
  }
  return doc;
}

std::string fingerprint(const AtomicComplex &atom) { return to_json(atom).dump(); }

std::string fingerprint(const PolyatomicComplex &poly) { return to_json(poly).dump(); }

}  // namespace polycomplex
