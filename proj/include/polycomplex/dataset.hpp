//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace polycomplex {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // 1-based source line of each row

  /// Throws MissingColumn.
  std::size_t column(std::string_view name) const;
};

/// RFC 4180 style reader: quoted fields, doubled quotes, CRLF, embedded
/// newlines. Throws IoError or UnparseableRow (ragged rows).
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string &path);

/// Empty, "NA", "N/A" and "nan" (any case) count as missing.
bool is_missing(std::string_view cell);

struct Imputation {
  std::string column;
  std::vector<std::size_t> rows;  // dataset row indices that were filled
  double fill_value = 0.0;
};

struct Dataset {
  std::vector<std::string> inputs;  // SMILES or composition strings
  std::vector<std::string> target_names;
  Eigen::MatrixXd targets;          // rows x targets, after imputation
  std::vector<std::size_t> lines;
  std::vector<Imputation> imputations;  // only columns with filled cells

  std::size_t size() const noexcept { return inputs.size(); }
};

/// Loads the input column and target columns, applying per-column mean
/// imputation. `max_rows` > 0 keeps only the first rows. Throws
/// MissingColumn, UnparseableRow or AllMissingColumn.
Dataset load_dataset(const std::string &path, const std::string &input_column,
                     const std::vector<std::string> &target_columns, std::size_t max_rows = 0);
Dataset dataset_from_table(const CsvTable &table, const std::string &input_column,
                           const std::vector<std::string> &target_columns, std::size_t max_rows = 0);

/// Fills missing entries (NaN) of `column` with the observed mean and returns
/// the record. Throws AllMissingColumn.
Imputation mean_impute(Eigen::Ref<Eigen::VectorXd> column, const std::string &name);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle; the training part has ceil(n * ratio) items, kept within
/// [1, n - 1]. Throws DegenerateSplit.
Split split(std::size_t n, double ratio, std::uint64_t seed);

}  // namespace polycomplex
