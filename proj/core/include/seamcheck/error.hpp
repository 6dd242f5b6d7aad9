#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seamcheck {

enum class ErrorCode {
  Syntax,
  Precision,
  DuplicateCell,
  DuplicatePin,
  NonIntegerHeight,
  ShapeOutOfBounds,
  MissingRule,
  InconsistentSpacing,
  InvalidRule,
  Precondition,
  HeightMismatch,
  CaseTooWide,
  NameCollision,
  UnknownOrientationCode,
  UnknownCellRef,
  IncompleteAssignment,
  Io,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library surface as this exception.
// Parsers fill in a 1-based line/column; other producers leave them 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorCode code_;
  int line_;
  int column_;
};

}  // namespace seamcheck
