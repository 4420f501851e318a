//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/featurize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "polycomplex/error.hpp"
#include "polycomplex/io.hpp"

namespace polycomplex {

std::string_view to_string(Featurizer f) noexcept { return f == Featurizer::Fast ? "fast" : "deep"; }

Featurizer featurizer_from_string(std::string_view name) {
  if (name == "fast")
    return Featurizer::Fast;
  if (name == "deep")
    return Featurizer::Deep;
  throw Error(ErrorCode::ConfigError, "featurizer must be 'fast' or 'deep', got '" + std::string(name) + "'");
}

std::uint64_t FeatureConfig::hash() const noexcept {
  const std::string key = fmt::format("{}|{}|{}", kRowSchema, to_string(featurizer), m_spec);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

double kind_code(CellKind kind) {
  switch (kind) {
  case CellKind::Proton:
    return 1.0;
  case CellKind::Neutron:
    return 2.0;
  case CellKind::Electron:
    return 3.0;
  case CellKind::AtomAggregate:
    return 4.0;
  }
  return 0.0;
}

// owners[i] is the element of atom i; cells with owner -1 use `fallback`.
Eigen::MatrixXd fast_rows(const Complex &complex, const std::vector<ElementRecord> &owners,
                          const ElementRecord *fallback) {
  const auto &cells = complex.cells();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cells.size()), kFastColumns);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell &c = cells[i];
    const ElementRecord *owner = fallback;
    if (c.owner >= 0 && static_cast<std::size_t>(c.owner) < owners.size())
      owner = &owners[static_cast<std::size_t>(c.owner)];
    const auto r = static_cast<Eigen::Index>(i);
    m(r, 0) = kind_code(c.kind);
    m(r, 1) = c.dim;
    m(r, 2) = c.radius;
    m(r, 3) = owner ? owner->atomic_number : 0;
    m(r, 4) = owner && c.kind == CellKind::Neutron ? owner->neutrons : 0;
    if (c.points.rows() > 0) {
      m(r, 5) = c.points.rowwise().norm().mean();
      const Eigen::Index axes = std::min<Eigen::Index>(4, c.points.cols());
      for (Eigen::Index a = 0; a < axes; ++a)
        m(r, 6 + a) = c.points.col(a).mean();
    }
  }
  return m;
}

Eigen::MatrixXd connectivity_rows(const Complex &complex, int m_spec) {
  const auto &cells = complex.cells();
  const auto n = static_cast<Eigen::Index>(cells.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, 3 + m_spec);

  std::unordered_map<CellId, int> link_degree;
  for (const auto &l : complex.links()) {
    ++link_degree[l.from];
    ++link_degree[l.to];
  }
  std::vector<Eigen::VectorXd> top(static_cast<std::size_t>(std::max(0, complex.max_dim() + 1)));
  for (int k = 0; k <= complex.max_dim(); ++k) {
    if (complex.count(k) == 0)
      continue;
    Eigen::VectorXd spectrum;
    try {
      spectrum = complex.hodge_spectrum(k);
    } catch (const Error &e) {
      throw Error(ErrorCode::EigenFailure, "Hodge spectrum failed in dimension " + std::to_string(k) + ": " + e.what());
    }
    Eigen::VectorXd t = Eigen::VectorXd::Zero(m_spec);
    for (Eigen::Index j = 0; j < m_spec && j < spectrum.size(); ++j) {
      const double v = spectrum[spectrum.size() - 1 - j];
      t[j] = std::abs(v) < 1e-12 ? 0.0 : v;  // exact zeros for kernel vectors
    }
    top[static_cast<std::size_t>(k)] = std::move(t);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell &c = cells[i];
    const auto r = static_cast<Eigen::Index>(i);
    std::vector<CellId> faces;
    for (const auto &[id, sign] : complex.boundary_of(c.id))
      faces.push_back(id);
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    m(r, 0) = static_cast<double>(faces.size());
    m(r, 1) = static_cast<double>(complex.coboundary_of(c.id).size());
    auto it = link_degree.find(c.id);
    m(r, 2) = it == link_degree.end() ? 0.0 : it->second;
    if (m_spec > 0)
      m.block(r, 3, 1, m_spec) = top[static_cast<std::size_t>(c.dim)].transpose();
  }
  return m;
}

FeatureMatrix wrap(Eigen::MatrixXd values, Featurizer kind, int m_spec) {
  FeatureMatrix out;
  out.values = std::move(values);
  out.featurizer = kind;
  out.config_hash = FeatureConfig{kind, m_spec}.hash();
  if (!out.values.allFinite())
    throw Error(ErrorCode::EigenFailure, "non-finite feature value");
  return out;
}

Eigen::MatrixXd deep_rows(const Complex &complex, const std::vector<ElementRecord> &owners,
                          const ElementRecord *fallback, int m_spec) {
  if (m_spec < 0)
    throw Error(ErrorCode::ConfigError, "m_spec must be non-negative");
  Eigen::MatrixXd fast = fast_rows(complex, owners, fallback);
  Eigen::MatrixXd conn = connectivity_rows(complex, m_spec);
  Eigen::MatrixXd m(fast.rows(), fast.cols() + conn.cols());
  m << fast, conn;
  return m;
}

ElementRecord record_for(const AtomSpec &spec) {
  ElementRecord r;
  r.atomic_number = spec.protons;
  r.neutrons = spec.neutrons;
  r.electrons = spec.electrons;
  return r;
}

}  // namespace

FeatureMatrix fast_complex(const PolyatomicComplex &poly) {
  return wrap(fast_rows(poly.C, poly.atoms, nullptr), Featurizer::Fast, 0);
}

FeatureMatrix fast_complex(const AtomicComplex &atom) {
  const ElementRecord owner = record_for(atom.spec);
  return wrap(fast_rows(atom.K, {}, &owner), Featurizer::Fast, 0);
}

FeatureMatrix deep_complex(const PolyatomicComplex &poly, int m_spec) {
  return wrap(deep_rows(poly.C, poly.atoms, nullptr, m_spec), Featurizer::Deep, m_spec);
}

FeatureMatrix deep_complex(const AtomicComplex &atom, int m_spec) {
  const ElementRecord owner = record_for(atom.spec);
  return wrap(deep_rows(atom.K, {}, &owner, m_spec), Featurizer::Deep, m_spec);
}

FeatureMatrix featurize(const PolyatomicComplex &poly, const FeatureConfig &config) {
  return config.featurizer == Featurizer::Fast ? fast_complex(poly) : deep_complex(poly, config.m_spec);
}

std::vector<FeatureMatrix> zero_pad(const std::vector<FeatureMatrix> &batch) {
  if (batch.empty())
    throw Error(ErrorCode::EmptyBatch, "zero_pad needs at least one matrix");
  Eigen::Index rows = 0, cols = 0;
  for (const auto &m : batch) {
    rows = std::max(rows, m.values.rows());
    cols = std::max(cols, m.values.cols());
  }
  std::vector<FeatureMatrix> out;
  out.reserve(batch.size());
  for (const auto &m : batch) {
    FeatureMatrix p = m;
    p.values = Eigen::MatrixXd::Zero(rows, cols);
    p.values.topLeftCorner(m.values.rows(), m.values.cols()) = m.values;
    out.push_back(std::move(p));
  }
  return out;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd &m) {
  Eigen::VectorXd v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      v[k++] = m(i, j);
  return v;
}

Eigen::VectorXd flatten(const FeatureMatrix &m) { return flatten(m.values); }

void write_feature_cache(const std::string &path, const std::vector<CachedFeatures> &records) {
  std::string out = "id,rows,cols,values\n";
  for (const auto &rec : records) {
    if (rec.id.find_first_of(",\n\"") != std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "feature cache ids must not contain commas, quotes or newlines");
    out += fmt::format("{},{},{}", rec.id, rec.values.rows(), rec.values.cols());
    for (Eigen::Index i = 0; i < rec.values.rows(); ++i)
      for (Eigen::Index j = 0; j < rec.values.cols(); ++j)
        out += fmt::format(",{}", rec.values(i, j));
    out += '\n';
  }
  write_text_file(path, out);
}

std::vector<CachedFeatures> read_feature_cache(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot read feature cache " + path);
  std::vector<CachedFeatures> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty())
      continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos)
        break;
      rest.remove_prefix(comma + 1);
    }
    auto bad = [&] { return Error(ErrorCode::UnparseableRow, "malformed feature cache line", lineno); };
    if (fields.size() < 3)
      throw bad();
    auto to_num = [&](std::string_view s, auto &value) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || p != s.data() + s.size())
        throw bad();
    };
    CachedFeatures rec;
    rec.id = std::string(fields[0]);
    long rows = 0, cols = 0;
    to_num(fields[1], rows);
    to_num(fields[2], cols);
    if (rows < 0 || cols < 0 || fields.size() != 3 + static_cast<std::size_t>(rows * cols))
      throw bad();
    rec.values.resize(rows, cols);
    std::size_t f = 3;
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j)
        to_num(fields[f++], rec.values(i, j));
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace polycomplex
