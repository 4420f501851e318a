//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polycomplex {

enum class ErrorCode {
  // elements
  UnknownElement,
  InvalidIsotope,
  NegativeElectrons,
  // smiles / formula
  EmptyInput,
  UnclosedBracket,
  DanglingBranch,
  UnmatchedRingClosure,
  DanglingBond,
  InvalidCharacter,
  ValenceOverflow,
  // complex
  DanglingTarget,
  DuplicateCellId,
  DimensionMismatch,
  DimensionOutOfRange,
  NonPositiveWeight,
  UnknownCell,
  // atomic / polyatomic
  ZeroRadius,
  NonHermitianProvided,
  IndexOutOfRange,
  EmptySystem,
  CoordinateCountMismatch,
  CoincidentAtoms,
  InsufficientAtoms,
  BadHistogramParams,
  // featurize / kernels / gp
  EigenFailure,
  EmptyBatch,
  LengthMismatch,
  FactorizationFailed,
  // bench
  MissingColumn,
  UnparseableRow,
  AllMissingColumn,
  DegenerateSplit,
  Empty,
  NonPositiveSigma,
  TooFewValues,
  // forcefield
  NoCoordinates,
  MissingParams,
  // plumbing
  InvalidArgument,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Structured failure raised by every polycomplex operation.
///
/// `location()` carries a byte offset (parsers) or a 1-based line number
/// (CSV/config readers) when one is meaningful.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message,
        std::optional<std::size_t> location = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> location() const noexcept { return location_; }

private:
  ErrorCode code_;
  std::optional<std::size_t> location_;
};

}  // namespace polycomplex
