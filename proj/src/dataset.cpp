//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "polycomplex/error.hpp"
#include "polycomplex/io.hpp"

namespace polycomplex {

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return i;
  throw Error(ErrorCode::MissingColumn, "column '" + std::string(name) + "' not found");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        if (record.size() != table.header.size())
          throw Error(ErrorCode::UnparseableRow,
                      "line " + std::to_string(record_line) + " has " + std::to_string(record.size()) +
                          " fields, expected " + std::to_string(table.header.size()),
                      record_line);
        table.rows.push_back(std::move(record));
        table.lines.push_back(record_line);
      }
    }
    record.clear();
  };

  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
    text.remove_prefix(3);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted)
    throw Error(ErrorCode::UnparseableRow, "unterminated quoted field starting on line " + std::to_string(record_line),
                record_line);
  if (field_started || !field.empty() || !record.empty())
    end_record();
  if (table.header.empty())
    throw Error(ErrorCode::Empty, "CSV input has no header");
  return table;
}

CsvTable read_csv(const std::string &path) { return parse_csv(read_text_file(path)); }

bool is_missing(std::string_view cell) {
  auto first = cell.find_first_not_of(" \t");
  if (first == std::string_view::npos)
    return true;
  auto last = cell.find_last_not_of(" \t");
  std::string s(cell.substr(first, last - first + 1));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s == "na" || s == "n/a" || s == "nan";
}

namespace {

std::optional<double> parse_double(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string_view::npos)
    return std::nullopt;
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s[0] == '+')
    s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

}  // namespace

Imputation mean_impute(Eigen::Ref<Eigen::VectorXd> column, const std::string &name) {
  Imputation record;
  record.column = name;
  double sum = 0.0;
  std::size_t observed = 0;
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    if (std::isnan(column[i])) {
      record.rows.push_back(static_cast<std::size_t>(i));
    } else {
      sum += column[i];
      ++observed;
    }
  }
  if (observed == 0)
    throw Error(ErrorCode::AllMissingColumn, "column '" + name + "' has no observed values");
  record.fill_value = sum / static_cast<double>(observed);
  for (std::size_t r : record.rows)
    column[static_cast<Eigen::Index>(r)] = record.fill_value;
  return record;
}

Dataset dataset_from_table(const CsvTable &table, const std::string &input_column,
                           const std::vector<std::string> &target_columns, std::size_t max_rows) {
  const std::size_t in_col = table.column(input_column);
  std::vector<std::size_t> t_cols;
  for (const auto &name : target_columns)
    t_cols.push_back(table.column(name));

  std::size_t n = table.rows.size();
  if (max_rows > 0)
    n = std::min(n, max_rows);
  if (n == 0)
    throw Error(ErrorCode::Empty, "dataset has no rows");

  Dataset ds;
  ds.target_names = target_columns;
  ds.targets.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t_cols.size()));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < n; ++r) {
    const auto &row = table.rows[r];
    const std::size_t line = table.lines[r];
    if (is_missing(row[in_col]))
      throw Error(ErrorCode::UnparseableRow, "line " + std::to_string(line) + ": missing '" + input_column + "'",
                  line);
    ds.inputs.push_back(row[in_col]);
    ds.lines.push_back(line);
    for (std::size_t c = 0; c < t_cols.size(); ++c) {
      const std::string &cell = row[t_cols[c]];
      double v = nan;
      if (!is_missing(cell)) {
        auto parsed = parse_double(cell);
        if (!parsed)
          throw Error(ErrorCode::UnparseableRow,
                      "line " + std::to_string(line) + ": '" + cell + "' in column '" + target_columns[c] +
                          "' is not a number",
                      line);
        v = *parsed;
      }
      ds.targets(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  for (std::size_t c = 0; c < t_cols.size(); ++c) {
    Imputation record = mean_impute(ds.targets.col(static_cast<Eigen::Index>(c)), target_columns[c]);
    if (!record.rows.empty())
      ds.imputations.push_back(std::move(record));
  }
  return ds;
}

Dataset load_dataset(const std::string &path, const std::string &input_column,
                     const std::vector<std::string> &target_columns, std::size_t max_rows) {
  return dataset_from_table(read_csv(path), input_column, target_columns, max_rows);
}

Split split(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorCode::DegenerateSplit, "split ratio must lie strictly between 0 and 1");
  if (n < 2)
    throw Error(ErrorCode::DegenerateSplit, "need at least two rows to split");
  auto n_train = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * ratio - 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  // rejection-sampled Fisher-Yates: identical partitions on every standard library
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::uint64_t bound = i + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit)
      draw = rng();
    std::swap(idx[i], idx[static_cast<std::size_t>(draw % bound)]);
  }
  Split s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

}  // namespace polycomplex
