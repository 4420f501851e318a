//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace polycomplex {

/// Particle counts for one atom: protons (= atomic number), neutrons and
/// electrons. Neutral atoms without an isotope annotation use the most
/// abundant natural isotope.
struct ElementRecord {
  std::string symbol;
  int atomic_number = 0;
  int neutrons = 0;
  int electrons = 0;

  int protons() const noexcept { return atomic_number; }
  int mass_number() const noexcept { return atomic_number + neutrons; }
  int charge() const noexcept { return atomic_number - electrons; }

  /// Orders by (Z, N, E); this is the canonical atom order used throughout.
  std::strong_ordering operator<=>(const ElementRecord &other) const noexcept;
  bool operator==(const ElementRecord &other) const noexcept;
};

/// Throws UnknownElement, InvalidIsotope (mass number < Z) or
/// NegativeElectrons (charge > Z).
ElementRecord lookup(std::string_view symbol,
                     std::optional<int> mass_number = std::nullopt,
                     int charge = 0);

ElementRecord lookup(int atomic_number,
                     std::optional<int> mass_number = std::nullopt,
                     int charge = 0);

std::optional<int> atomic_number_of(std::string_view symbol) noexcept;
std::string_view symbol_of(int atomic_number);
int default_neutrons(int atomic_number);
int element_count() noexcept;

}  // namespace polycomplex
