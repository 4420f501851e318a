//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "polycomplex/error.hpp"
#include "polycomplex/io.hpp"

namespace polycomplex {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *expected) {
  throw Error(ErrorCode::ConfigError, "config key '" + key + "': '" + value + "' is not " + expected);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty() || line.front() == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line_no) + ": expected key = value",
                  line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line_no) + ": empty key", line_no);
    if (cfg.values_.count(key))
      throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                  line_no);
    cfg.values_.emplace(std::move(key), std::move(value));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string &path) { return parse(read_text_file(path)); }

std::string KeyValueConfig::get(const std::string &key, const std::string &fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string KeyValueConfig::require(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty())
    throw Error(ErrorCode::ConfigError, "config key '" + key + "' is required");
  return it->second;
}

long KeyValueConfig::get_int(const std::string &key, long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  long v = 0;
  const auto &s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    bad_value(key, s, "an integer");
  return v;
}

std::uint64_t KeyValueConfig::get_u64(const std::string &key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  std::uint64_t v = 0;
  const auto &s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    bad_value(key, s, "a non-negative integer");
  return v;
}

double KeyValueConfig::get_double(const std::string &key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  double v = 0;
  const auto &s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    bad_value(key, s, "a finite number");
  return v;
}

bool KeyValueConfig::get_bool(const std::string &key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  std::string s = it->second;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on")
    return true;
  if (s == "false" || s == "0" || s == "no" || s == "off")
    return false;
  bad_value(key, it->second, "a boolean");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string &key) const {
  std::vector<std::string> out;
  auto it = values_.find(key);
  if (it == values_.end())
    return out;
  std::string_view rest = it->second;
  while (true) {
    auto comma = rest.find(',');
    auto item = trim(rest.substr(0, comma));
    if (!item.empty())
      out.emplace_back(item);
    if (comma == std::string_view::npos)
      break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void KeyValueConfig::check_known(const std::set<std::string> &known) const {
  std::string unknown;
  for (const auto &[key, value] : values_)
    if (!known.count(key))
      unknown += (unknown.empty() ? "" : ", ") + key;
  if (!unknown.empty())
    throw Error(ErrorCode::ConfigError, "unknown config keys: " + unknown);
}

const std::set<std::string> &atomic_config_keys() {
  static const std::set<std::string> keys{"proton_dim",  "neutron_dim", "electron_dim", "dim_range",
                                          "samples_per_cell", "radius_p_fm", "radius_n_fm", "radius_e_fm",
                                          "force_matrix_mode"};
  return keys;
}

AtomicConfig atomic_config_from(const KeyValueConfig &kv) {
  AtomicConfig c;
  c.proton_dim = static_cast<int>(kv.get_int("proton_dim", c.proton_dim));
  c.neutron_dim = static_cast<int>(kv.get_int("neutron_dim", c.neutron_dim));
  c.electron_dim = static_cast<int>(kv.get_int("electron_dim", c.electron_dim));
  if (kv.has("dim_range") && !kv.get("dim_range", "").empty())
    c.dim_range = static_cast<int>(kv.get_int("dim_range", 0));
  c.samples_per_cell = static_cast<int>(kv.get_int("samples_per_cell", c.samples_per_cell));
  c.radius_p_fm = kv.get_double("radius_p_fm", c.radius_p_fm);
  c.radius_n_fm = kv.get_double("radius_n_fm", c.radius_n_fm);
  c.radius_e_fm = kv.get_double("radius_e_fm", c.radius_e_fm);
  const std::string mode = kv.get("force_matrix_mode", "gue");
  if (mode == "gue")
    c.force_matrix_mode = ForceMatrixMode::Gue;
  else if (mode == "provided")
    c.force_matrix_mode = ForceMatrixMode::Provided;
  else
    throw Error(ErrorCode::ConfigError, "config key 'force_matrix_mode': expected gue or provided");
  c.validate();
  return c;
}

}  // namespace polycomplex
