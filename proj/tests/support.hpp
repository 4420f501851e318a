// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the test binaries.
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polycomplex/dataset.hpp"

namespace testing {

inline std::string data_path(const std::string &name) { return std::string(POLYCOMPLEX_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string &name) {
  return std::string(POLYCOMPLEX_FIXTURE_DIR) + "/" + name;
}

// "C:2;H:6;O:1" -> {C:2, H:6, O:1}; isotopes ("H@2") fold into the element.
inline std::map<std::string, int> parse_counts(const std::string &text) {
  std::map<std::string, int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto colon = item.find(':');
    std::string sym = item.substr(0, colon);
    sym = sym.substr(0, sym.find('@'));
    out[sym] += std::stoi(item.substr(colon + 1));
  }
  return out;
}

inline std::vector<std::pair<std::string, std::map<std::string, int>>> load_count_fixture(const std::string &name) {
  const auto table = polycomplex::read_csv(fixture_path(name));
  std::vector<std::pair<std::string, std::map<std::string, int>>> out;
  for (const auto &row : table.rows)
    out.emplace_back(row[0], parse_counts(row[1]));
  return out;
}

}  // namespace testing
