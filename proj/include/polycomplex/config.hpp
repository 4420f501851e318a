//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polycomplex/atomic.hpp"

namespace polycomplex {

/// Flat "key = value" text. '#' starts a comment line; blank lines are
/// ignored; keys may appear once.
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string &path);

  bool has(const std::string &key) const { return values_.count(key) > 0; }
  void set(const std::string &key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string> &values() const noexcept { return values_; }

  /// Typed getters throw ConfigError naming the key on malformed values.
  std::string get(const std::string &key, const std::string &fallback) const;
  std::string require(const std::string &key) const;
  long get_int(const std::string &key, long fallback) const;
  std::uint64_t get_u64(const std::string &key, std::uint64_t fallback) const;
  double get_double(const std::string &key, double fallback) const;
  bool get_bool(const std::string &key, bool fallback) const;
  /// Comma-separated list, entries trimmed.
  std::vector<std::string> get_list(const std::string &key) const;

  /// Throws ConfigError listing any key outside `known`.
  void check_known(const std::set<std::string> &known) const;

private:
  std::map<std::string, std::string> values_;
};

/// Reads proton_dim, neutron_dim, electron_dim, dim_range, samples_per_cell,
/// radius_p_fm, radius_n_fm, radius_e_fm and force_matrix_mode.
AtomicConfig atomic_config_from(const KeyValueConfig &kv);
const std::set<std::string> &atomic_config_keys();

}  // namespace polycomplex
