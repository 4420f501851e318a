//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

#include <json.hpp>

#include "polycomplex/atomic.hpp"
#include "polycomplex/complex.hpp"
#include "polycomplex/polyatomic.hpp"

namespace polycomplex {

inline constexpr const char *kComplexSchema = "polycomplex.complex/1";
inline constexpr const char *kAtomicSchema = "polycomplex.atomic/1";
inline constexpr const char *kPolyatomicSchema = "polycomplex.polyatomic/1";

nlohmann::json to_json(const Complex &complex);
Complex complex_from_json(const nlohmann::json &doc);

nlohmann::json to_json(const AtomicComplex &atom);

/// Canonical form: depends only on the canonical atom order, never on the
/// caller's input order.
nlohmann::json to_json(const PolyatomicComplex &poly);

/// Compact, deterministic serialisation used as a structural fingerprint.
std::string fingerprint(const AtomicComplex &atom);
std::string fingerprint(const PolyatomicComplex &poly);

}  // namespace polycomplex
