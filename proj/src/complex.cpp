//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polycomplex/error.hpp"

namespace polycomplex {

std::string_view to_string(CellKind kind) noexcept {
  switch (kind) {
  case CellKind::Proton:
    return "proton";
  case CellKind::Neutron:
    return "neutron";
  case CellKind::Electron:
    return "electron";
  case CellKind::AtomAggregate:
    return "atom";
  }
  return "atom";
}

CellKind cell_kind_from_string(std::string_view name) {
  if (name == "proton")
    return CellKind::Proton;
  if (name == "neutron")
    return CellKind::Neutron;
  if (name == "electron")
    return CellKind::Electron;
  if (name == "atom")
    return CellKind::AtomAggregate;
  throw Error(ErrorCode::InvalidArgument, "unknown cell kind '" + std::string(name) + "'");
}

namespace {
const std::vector<std::size_t> kNoCells;
}

void Complex::attach(Cell cell, GlueMap map) {
  if (index_.count(cell.id))
    throw Error(ErrorCode::DuplicateCellId, "cell id " + std::to_string(cell.id) + " already present");
  if (cell.dim < 0)
    throw Error(ErrorCode::DimensionMismatch, "negative cell dimension");
  if (!(cell.weight > 0.0))
    throw Error(ErrorCode::NonPositiveWeight, "cell " + std::to_string(cell.id) + " weight must be positive");

  std::vector<std::pair<CellId, int>> resolved;
  resolved.reserve(map.targets.size());
  std::vector<CellId> automatic;
  for (const auto &t : map.targets) {
    auto it = index_.find(t.id);
    if (it == index_.end())
      throw Error(ErrorCode::DanglingTarget,
                  "cell " + std::to_string(cell.id) + " glues to missing cell " + std::to_string(t.id));
    if (cells_[it->second].dim != cell.dim - 1)
      throw Error(ErrorCode::DimensionMismatch,
                  "cell " + std::to_string(cell.id) + " of dim " + std::to_string(cell.dim) +
                      " cannot glue to cell " + std::to_string(t.id) + " of dim " +
                      std::to_string(cells_[it->second].dim));
    if (t.sign != 0 && t.sign != 1 && t.sign != -1)
      throw Error(ErrorCode::InvalidArgument, "orientation sign must be -1, 0 or +1");
    if (t.sign == 0)
      automatic.push_back(t.id);
    else
      resolved.emplace_back(t.id, t.sign);
  }
  std::sort(automatic.begin(), automatic.end());
  int sign = -1;
  for (CellId id : automatic) {
    resolved.emplace_back(id, sign);
    sign = -sign;
  }
  std::stable_sort(resolved.begin(), resolved.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });

  const std::size_t idx = cells_.size();
  if (static_cast<std::size_t>(cell.dim) >= by_dim_.size())
    by_dim_.resize(static_cast<std::size_t>(cell.dim) + 1);
  auto &dim_list = by_dim_[static_cast<std::size_t>(cell.dim)];
  pos_in_dim_.push_back(dim_list.size());
  dim_list.push_back(idx);
  for (const auto &[target, s] : resolved) {
    auto &cf = cofaces_[index_.at(target)];
    if (cf.empty() || cf.back() != idx)
      cf.push_back(idx);
  }
  index_.emplace(cell.id, idx);
  cells_.push_back(std::move(cell));
  boundary_.push_back(std::move(resolved));
  correspondence_.push_back(std::move(map.correspondence));
  cofaces_.emplace_back();
}

void Complex::link(CellId from, CellId to, std::string label) {
  if (!contains(from) || !contains(to))
    throw Error(ErrorCode::UnknownCell, "link endpoint missing: " + std::to_string(from) + " -> " +
                                            std::to_string(to));
  links_.push_back({from, to, std::move(label)});
}

std::size_t Complex::index_of(CellId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(ErrorCode::UnknownCell, "no cell with id " + std::to_string(id));
  return it->second;
}

const Cell &Complex::cell(CellId id) const { return cells_[index_of(id)]; }

const std::vector<std::size_t> &Complex::cells_of_dim(int k) const {
  if (k < 0 || k > max_dim())
    return kNoCells;
  return by_dim_[static_cast<std::size_t>(k)];
}

std::size_t Complex::position_in_dim(CellId id) const { return pos_in_dim_[index_of(id)]; }

const std::vector<std::pair<CellId, int>> &Complex::boundary_of(CellId id) const {
  return boundary_[index_of(id)];
}

std::vector<CellId> Complex::coboundary_of(CellId id) const {
  std::vector<CellId> out;
  for (std::size_t i : cofaces_[index_of(id)])
    out.push_back(cells_[i].id);
  return out;
}

const std::map<std::string, std::string> &Complex::correspondence_of(CellId id) const {
  return correspondence_[index_of(id)];
}

void Complex::set_weights(int k, const Eigen::VectorXd &weights) {
  const auto &ids = cells_of_dim(k);
  if (static_cast<std::size_t>(weights.size()) != ids.size())
    throw Error(ErrorCode::LengthMismatch, "weight vector length " + std::to_string(weights.size()) +
                                               " does not match " + std::to_string(ids.size()) +
                                               " cells of dim " + std::to_string(k));
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw Error(ErrorCode::NonPositiveWeight, "weights must be strictly positive");
  for (std::size_t i = 0; i < ids.size(); ++i)
    cells_[ids[i]].weight = weights[static_cast<Eigen::Index>(i)];
}

Eigen::VectorXd Complex::weights(int k) const {
  const auto &ids = cells_of_dim(k);
  Eigen::VectorXd w(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    w[static_cast<Eigen::Index>(i)] = cells_[ids[i]].weight;
  return w;
}

Eigen::SparseMatrix<int> Complex::boundary_block(int k) const {
  const auto rows = static_cast<Eigen::Index>(count(k - 1));
  const auto &cols = cells_of_dim(k);
  Eigen::SparseMatrix<int> b(rows, static_cast<Eigen::Index>(cols.size()));
  std::vector<Eigen::Triplet<int>> triplets;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto &[target, sign] : boundary_[cols[c]])
      triplets.emplace_back(static_cast<int>(pos_in_dim_[index_.at(target)]), static_cast<int>(c), sign);
  b.setFromTriplets(triplets.begin(), triplets.end());
  b.prune(0);
  b.makeCompressed();
  return b;
}

Eigen::SparseMatrix<int> Complex::boundary_matrix(int k) const {
  if (k < 1 || k > max_dim())
    throw Error(ErrorCode::DimensionOutOfRange,
                "boundary matrix B_" + std::to_string(k) + " requested; valid range is 1.." +
                    std::to_string(max_dim()));
  return boundary_block(k);
}

namespace {

Eigen::SparseMatrix<double> diag(const Eigen::VectorXd &v) {
  Eigen::SparseMatrix<double> d(v.size(), v.size());
  d.reserve(Eigen::VectorXi::Constant(v.size(), 1));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    d.insert(i, i) = v[i];
  d.makeCompressed();
  return d;
}

void check_weights(const Eigen::VectorXd &w, int k) {
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0))
      throw Error(ErrorCode::NonPositiveWeight, "non-positive weight in dimension " + std::to_string(k));
}

}  // namespace

Eigen::SparseMatrix<double> Complex::hodge_laplacian(int k) const {
  if (k < 0 || k > max_dim())
    throw Error(ErrorCode::DimensionOutOfRange,
                "Hodge Laplacian of dimension " + std::to_string(k) + " requested; valid range is 0.." +
                    std::to_string(max_dim()));
  const Eigen::VectorXd wk = weights(k);
  check_weights(wk, k);
  const auto n = static_cast<Eigen::Index>(count(k));
  Eigen::SparseMatrix<double> lap(n, n);
  if (k >= 1) {
    const Eigen::VectorXd wl = weights(k - 1);
    check_weights(wl, k - 1);
    Eigen::SparseMatrix<double> b = boundary_block(k).cast<double>();
    Eigen::SparseMatrix<double> down = b.transpose() * diag(wl.cwiseInverse()) * b * diag(wk);
    lap += down;
  }
  if (k + 1 <= max_dim()) {
    const Eigen::VectorXd wu = weights(k + 1);
    check_weights(wu, k + 1);
    Eigen::SparseMatrix<double> b = boundary_block(k + 1).cast<double>();
    Eigen::SparseMatrix<double> up = diag(wk.cwiseInverse()) * b * diag(wu) * b.transpose();
    lap += up;
  }
  lap.prune(0.0);
  lap.makeCompressed();
  return lap;
}

Eigen::VectorXd Complex::hodge_spectrum(int k) const {
  Eigen::SparseMatrix<double> lap = hodge_laplacian(k);
  const Eigen::VectorXd sq = weights(k).cwiseSqrt();
  // W^{1/2} L W^{-1/2} is symmetric for this operator.
  Eigen::SparseMatrix<double> sym = diag(sq) * lap * diag(sq.cwiseInverse());
  const auto n = sym.rows();

  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index c = 0; c < sym.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sym, c); it; ++it)
      parent[find(it.row())] = find(it.col());

  std::map<Eigen::Index, std::vector<Eigen::Index>> blocks;
  for (Eigen::Index i = 0; i < n; ++i)
    blocks[find(i)].push_back(i);

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (const auto &[root, members] : blocks) {
    const auto m = static_cast<Eigen::Index>(members.size());
    if (m == 1) {
      values.push_back(sym.coeff(members[0], members[0]));
      continue;
    }
    Eigen::MatrixXd dense(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        dense(a, b) = sym.coeff(members[a], members[b]);
    dense = 0.5 * (dense + dense.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::EigenFailure,
                  "eigen-decomposition of Hodge Laplacian block failed in dimension " + std::to_string(k));
    for (Eigen::Index a = 0; a < m; ++a)
      values.push_back(solver.eigenvalues()[a]);
  }
  std::sort(values.begin(), values.end());
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int Complex::betti_number(int k) const {
  if (k < 0 || k > max_dim())
    throw Error(ErrorCode::DimensionOutOfRange, "Betti number of dimension " + std::to_string(k));
  auto rank = [this](int j) -> Eigen::Index {
    if (j < 1 || j > max_dim())
      return 0;
    Eigen::MatrixXd dense = Eigen::MatrixXd(boundary_block(j).cast<double>());
    if (dense.size() == 0)
      return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
    return lu.rank();
  };
  return static_cast<int>(static_cast<Eigen::Index>(count(k)) - rank(k) - rank(k + 1));
}

bool Complex::is_closure_finite() const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (const auto &[target, sign] : boundary_[i]) {
      auto it = index_.find(target);
      if (it == index_.end() || it->second >= i || cells_[it->second].dim != cells_[i].dim - 1)
        return false;
      if (sign != 1 && sign != -1)
        return false;
    }
  }
  return true;
}

Complex glue(Complex complex, Cell cell, GlueMap map) {
  complex.attach(std::move(cell), std::move(map));
  return complex;
}

}  // namespace polycomplex
