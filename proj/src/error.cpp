//
// polycomplex - Copyright 2026 The polycomplex Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "polycomplex/error.hpp"

namespace polycomplex {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::UnknownElement: return "UnknownElement";
  case ErrorCode::InvalidIsotope: return "InvalidIsotope";
  case ErrorCode::NegativeElectrons: return "NegativeElectrons";
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::UnclosedBracket: return "UnclosedBracket";
  case ErrorCode::DanglingBranch: return "DanglingBranch";
  case ErrorCode::UnmatchedRingClosure: return "UnmatchedRingClosure";
  case ErrorCode::DanglingBond: return "DanglingBond";
  case ErrorCode::InvalidCharacter: return "InvalidCharacter";
  case ErrorCode::ValenceOverflow: return "ValenceOverflow";
  case ErrorCode::DanglingTarget: return "DanglingTarget";
  case ErrorCode::DuplicateCellId: return "DuplicateCellId";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
  case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
  case ErrorCode::UnknownCell: return "UnknownCell";
  case ErrorCode::ZeroRadius: return "ZeroRadius";
  case ErrorCode::NonHermitianProvided: return "NonHermitianProvided";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::EmptySystem: return "EmptySystem";
  case ErrorCode::CoordinateCountMismatch: return "CoordinateCountMismatch";
  case ErrorCode::CoincidentAtoms: return "CoincidentAtoms";
  case ErrorCode::InsufficientAtoms: return "InsufficientAtoms";
  case ErrorCode::BadHistogramParams: return "BadHistogramParams";
  case ErrorCode::EigenFailure: return "EigenFailure";
  case ErrorCode::EmptyBatch: return "EmptyBatch";
  case ErrorCode::LengthMismatch: return "LengthMismatch";
  case ErrorCode::FactorizationFailed: return "FactorizationFailed";
  case ErrorCode::MissingColumn: return "MissingColumn";
  case ErrorCode::UnparseableRow: return "UnparseableRow";
  case ErrorCode::AllMissingColumn: return "AllMissingColumn";
  case ErrorCode::DegenerateSplit: return "DegenerateSplit";
  case ErrorCode::Empty: return "Empty";
  case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
  case ErrorCode::TooFewValues: return "TooFewValues";
  case ErrorCode::NoCoordinates: return "NoCoordinates";
  case ErrorCode::MissingParams: return "MissingParams";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::ConfigError: return "ConfigError";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message,
             std::optional<std::size_t> location)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code), location_(location) {}

}  // namespace polycomplex
