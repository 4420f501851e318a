//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/elements.hpp"

#include <charconv>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "polycomplex/error.hpp"

namespace polycomplex {
namespace detail {
extern const std::string_view kElementsCsv;
}

namespace {

struct ElementRow {
  std::string symbol;
  int z;
  int default_neutrons;
};

struct ElementTable {
  std::vector<ElementRow> rows;  // index z - 1
  std::unordered_map<std::string, int> by_symbol;
};

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::ConfigError,
                "malformed integer in element table: " + std::string(text));
  return value;
}

ElementTable load_table() {
  ElementTable table;
  std::string_view csv = detail::kElementsCsv;
  bool header = true;
  while (!csv.empty()) {
    auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      continue;
    if (header) {
      header = false;
      continue;
    }
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    ElementRow row{std::string(line.substr(0, c1)),
                   parse_int(line.substr(c1 + 1, c2 - c1 - 1)),
                   parse_int(line.substr(c2 + 1))};
    if (row.z != static_cast<int>(table.rows.size()) + 1)
      throw Error(ErrorCode::ConfigError, "element table out of order at " + row.symbol);
    table.by_symbol.emplace(row.symbol, row.z);
    table.rows.push_back(std::move(row));
  }
  return table;
}

const ElementTable &table() {
  static const ElementTable instance = load_table();
  return instance;
}

}  // namespace

std::strong_ordering ElementRecord::operator<=>(const ElementRecord &other) const noexcept {
  return std::tie(atomic_number, neutrons, electrons) <=>
         std::tie(other.atomic_number, other.neutrons, other.electrons);
}

bool ElementRecord::operator==(const ElementRecord &other) const noexcept {
  return atomic_number == other.atomic_number && neutrons == other.neutrons &&
         electrons == other.electrons;
}

std::optional<int> atomic_number_of(std::string_view symbol) noexcept {
  const auto &t = table();
  auto it = t.by_symbol.find(std::string(symbol));
  if (it == t.by_symbol.end())
    return std::nullopt;
  return it->second;
}

int element_count() noexcept { return static_cast<int>(table().rows.size()); }

std::string_view symbol_of(int atomic_number) {
  if (atomic_number < 1 || atomic_number > element_count())
    throw Error(ErrorCode::UnknownElement, "atomic number " + std::to_string(atomic_number));
  return table().rows[atomic_number - 1].symbol;
}

int default_neutrons(int atomic_number) {
  if (atomic_number < 1 || atomic_number > element_count())
    throw Error(ErrorCode::UnknownElement, "atomic number " + std::to_string(atomic_number));
  return table().rows[atomic_number - 1].default_neutrons;
}

ElementRecord lookup(int atomic_number, std::optional<int> mass_number, int charge) {
  ElementRecord record;
  record.symbol = std::string(symbol_of(atomic_number));
  record.atomic_number = atomic_number;
  if (mass_number) {
    if (*mass_number < atomic_number)
      throw Error(ErrorCode::InvalidIsotope,
                  "mass number " + std::to_string(*mass_number) + " below Z for " + record.symbol);
    record.neutrons = *mass_number - atomic_number;
  } else {
    record.neutrons = default_neutrons(atomic_number);
  }
  if (charge > atomic_number)
    throw Error(ErrorCode::NegativeElectrons,
                "charge " + std::to_string(charge) + " exceeds Z for " + record.symbol);
  record.electrons = atomic_number - charge;
  return record;
}

ElementRecord lookup(std::string_view symbol, std::optional<int> mass_number, int charge) {
  auto z = atomic_number_of(symbol);
  if (!z)
    throw Error(ErrorCode::UnknownElement, "unknown element symbol '" + std::string(symbol) + "'");
  return lookup(*z, mass_number, charge);
}

}  // namespace polycomplex
