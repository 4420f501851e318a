//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace polycomplex {

using CellId = std::int64_t;

enum class CellKind { Proton, Neutron, Electron, AtomAggregate };

std::string_view to_string(CellKind kind) noexcept;
CellKind cell_kind_from_string(std::string_view name);

struct Cell {
  CellId id = 0;
  int dim = 0;
  CellKind kind = CellKind::AtomAggregate;
  double radius = 0.0;
  int owner = -1;          // owning atom index in a polyatomic complex
  double weight = 1.0;     // Hodge weight
  Eigen::MatrixXd points;  // rows are sampled points in R^(dim+1)
  std::map<std::string, double> attributes;
};

struct GlueTarget {
  CellId id = 0;
  int sign = 0;  // 0 = assign automatically
};

/// Combinatorial attaching map. Targets left with sign 0 are ordered by id
/// and receive alternating signs -1, +1, -1, ... Explicit signs are kept.
struct GlueMap {
  std::vector<GlueTarget> targets;
  std::map<std::string, std::string> correspondence;  // carried, not interpreted
};

/// Cross link between subcomplexes (a recorded attaching relation that does
/// not contribute to the boundary operator).
struct CellLink {
  CellId from = 0;
  CellId to = 0;
  std::string label;
  bool operator==(const CellLink &) const = default;
};

class Complex {
public:
  /// Adds `cell` with boundary `map`. Throws DuplicateCellId, DanglingTarget,
  /// DimensionMismatch or NonPositiveWeight; on error the complex is unchanged.
  void attach(Cell cell, GlueMap map = {});
  void link(CellId from, CellId to, std::string label);

  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  int max_dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  const std::vector<Cell> &cells() const noexcept { return cells_; }
  const Cell &cell(CellId id) const;
  bool contains(CellId id) const noexcept { return index_.count(id) > 0; }
  std::size_t index_of(CellId id) const;
  /// Cell indices of dimension k in insertion order (empty when none).
  const std::vector<std::size_t> &cells_of_dim(int k) const;
  std::size_t count(int k) const { return cells_of_dim(k).size(); }
  /// Row/column position of a cell inside its dimension block.
  std::size_t position_in_dim(CellId id) const;

  /// Resolved (target id, sign) pairs, duplicates preserved.
  const std::vector<std::pair<CellId, int>> &boundary_of(CellId id) const;
  /// Ids of cells whose boundary lists `id`, without duplicates.
  std::vector<CellId> coboundary_of(CellId id) const;
  const std::map<std::string, std::string> &correspondence_of(CellId id) const;
  const std::vector<CellLink> &links() const noexcept { return links_; }

  void set_weights(int k, const Eigen::VectorXd &weights);
  Eigen::VectorXd weights(int k) const;

  /// Signed incidence matrix B_k, rows (k-1)-cells, columns k-cells.
  /// Requires 1 <= k <= max_dim(), else DimensionOutOfRange.
  Eigen::SparseMatrix<int> boundary_matrix(int k) const;

  /// Weighted Hodge Laplacian
  ///   B_k^T W_{k-1}^{-1} B_k W_k + W_k^{-1} B_{k+1} W_{k+1} B_{k+1}^T.
  /// Requires 0 <= k <= max_dim().
  Eigen::SparseMatrix<double> hodge_laplacian(int k) const;

  /// Eigenvalues of the Hodge Laplacian in ascending order. Computed on the
  /// symmetrised similarity transform, one connected block at a time.
  Eigen::VectorXd hodge_spectrum(int k) const;

  /// Rank computation over the rationals.
  int betti_number(int k) const;

  /// Every boundary target exists, has dimension one lower, and every cell has
  /// finitely many faces.
  bool is_closure_finite() const;

private:
  Eigen::SparseMatrix<int> boundary_block(int k) const;

  std::vector<Cell> cells_;
  std::vector<std::vector<std::pair<CellId, int>>> boundary_;
  std::vector<std::map<std::string, std::string>> correspondence_;
  std::vector<std::vector<std::size_t>> cofaces_;
  std::vector<std::size_t> pos_in_dim_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::unordered_map<CellId, std::size_t> index_;
  std::vector<CellLink> links_;
};

/// Value-semantics form of Complex::attach.
Complex glue(Complex complex, Cell cell, GlueMap map = {});

}  // namespace polycomplex
