#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evoline {

enum class ErrorCategory {
  DivisionByZero,
  FieldMismatch,
  UnsupportedField,
  NonSquare,
  DimensionMismatch,
  AlgebraMismatch,
  NotNatural,
  SingularChange,
  NotAnIdeal,
  NotProper,
  InternalInconsistency,
  WitnessFailed,
  NotRegular,
  SizeLimit,
  ParseError,
  ShapeError,
  BadScalar,
  BadFieldTag,
  Usage,
};

inline std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::DivisionByZero: return "DivisionByZero";
    case ErrorCategory::FieldMismatch: return "FieldMismatch";
    case ErrorCategory::UnsupportedField: return "UnsupportedField";
    case ErrorCategory::NonSquare: return "NonSquare";
    case ErrorCategory::DimensionMismatch: return "DimensionMismatch";
    case ErrorCategory::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCategory::NotNatural: return "NotNatural";
    case ErrorCategory::SingularChange: return "SingularChange";
    case ErrorCategory::NotAnIdeal: return "NotAnIdeal";
    case ErrorCategory::NotProper: return "NotProper";
    case ErrorCategory::InternalInconsistency: return "InternalInconsistency";
    case ErrorCategory::WitnessFailed: return "WitnessFailed";
    case ErrorCategory::NotRegular: return "NotRegular";
    case ErrorCategory::SizeLimit: return "SizeLimit";
    case ErrorCategory::ParseError: return "ParseError";
    case ErrorCategory::ShapeError: return "ShapeError";
    case ErrorCategory::BadScalar: return "BadScalar";
    case ErrorCategory::BadFieldTag: return "BadFieldTag";
    case ErrorCategory::Usage: return "Usage";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void raise(ErrorCategory c, const std::string& message) {
  throw Error(c, message);
}

}  // namespace evoline
