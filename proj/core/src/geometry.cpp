#include "seamcheck/geometry.hpp"

#include "seamcheck/error.hpp"

namespace seamcheck {

std::ostream& operator<<(std::ostream& os, const Rect& r) {
  return os << "(" << r.x1 << " " << r.y1 << " " << r.x2 << " " << r.y2 << ")";
}

std::string_view to_string(Mask m) {
  switch (m) {
    case Mask::None:
      return "None";
    case Mask::Mask1:
      return "Mask1";
    case Mask::Mask2:
      return "Mask2";
  }
  return "?";
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::R0:
      return "R0";
    case Orientation::R180:
      return "R180";
    case Orientation::MX:
      return "MX";
    case Orientation::MY:
      return "MY";
  }
  return "?";
}

std::string_view to_def_code(Orientation o) {
  switch (o) {
    case Orientation::R0:
      return "N";
    case Orientation::R180:
      return "S";
    case Orientation::MX:
      return "FS";
    case Orientation::MY:
      return "FN";
  }
  return "?";
}

std::optional<Orientation> from_def_code(std::string_view code) {
  if (code == "N") return Orientation::R0;
  if (code == "S") return Orientation::R180;
  if (code == "FS") return Orientation::MX;
  if (code == "FN") return Orientation::MY;
  return std::nullopt;
}

std::optional<Orientation> orientation_from_string(std::string_view name) {
  for (Orientation o : kAllOrientations) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax:
      return "SyntaxError";
    case ErrorCode::Precision:
      return "PrecisionError";
    case ErrorCode::DuplicateCell:
      return "DuplicateCell";
    case ErrorCode::DuplicatePin:
      return "DuplicatePin";
    case ErrorCode::NonIntegerHeight:
      return "NonIntegerHeight";
    case ErrorCode::ShapeOutOfBounds:
      return "ShapeOutOfBounds";
    case ErrorCode::MissingRule:
      return "MissingLayerRule";
    case ErrorCode::InconsistentSpacing:
      return "InconsistentSpacing";
    case ErrorCode::InvalidRule:
      return "InvalidRule";
    case ErrorCode::Precondition:
      return "PreconditionFailed";
    case ErrorCode::HeightMismatch:
      return "HeightMismatch";
    case ErrorCode::CaseTooWide:
      return "CaseTooWide";
    case ErrorCode::NameCollision:
      return "NameCollision";
    case ErrorCode::UnknownOrientationCode:
      return "UnknownOrientationCode";
    case ErrorCode::UnknownCellRef:
      return "UnknownCellRef";
    case ErrorCode::IncompleteAssignment:
      return "IncompleteAssignment";
    case ErrorCode::Io:
      return "IoError";
  }
  return "Error";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, int line, int column) {
  std::string out(to_string(code));
  if (line > 0) {
    out += " at " + std::to_string(line) + ":" + std::to_string(column);
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(decorate(code, message, line, column)),
      code_(code),
      line_(line),
      column_(column) {}

}  // namespace seamcheck
