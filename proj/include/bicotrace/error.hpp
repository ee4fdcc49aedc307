#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicotrace {

enum class ErrorKind {
  InvalidField,
  FieldMismatch,
  DivisionByZero,
  DimensionMismatch,
  NotInvertible,
  AssociativityViolation,
  UnitViolation,
  InvalidGroupTable,
  NotMultiplicative,
  UnitNotPreserved,
  InvalidBimodule,
  NotBimoduleMap,
  MismatchedMiddleAlgebra,
  Mismatch,
  NotEndoBimodule,
  TriangleIdentity,
  NotCommutativeBase,
  BadCosetSystem,
  HypothesisFails,
  Parse,
  Reference,
  Io,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::UnitViolation: return "UnitViolation";
    case ErrorKind::InvalidGroupTable: return "InvalidGroupTable";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::UnitNotPreserved: return "UnitNotPreserved";
    case ErrorKind::InvalidBimodule: return "InvalidBimodule";
    case ErrorKind::NotBimoduleMap: return "NotBimoduleMap";
    case ErrorKind::MismatchedMiddleAlgebra: return "MismatchedMiddleAlgebra";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::NotEndoBimodule: return "NotEndoBimodule";
    case ErrorKind::TriangleIdentity: return "TriangleIdentity";
    case ErrorKind::NotCommutativeBase: return "NotCommutativeBase";
    case ErrorKind::BadCosetSystem: return "BadCosetSystem";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Reference: return "Reference";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// The single exception type of the library. `indices` carries the failing
/// basis indices for validation errors (e.g. (i, j, l) of an associativity
/// violation).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), indices_(std::move(indices)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace bicotrace
