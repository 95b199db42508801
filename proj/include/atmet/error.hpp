#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atmet {

enum class ErrorKind {
  // term graph validation
  DuplicateInput,
  ArityMismatch,
  CycleDetected,
  DanglingReference,
  LabelOnInput,
  MissingLabel,
  UnknownSymbol,
  // evaluation
  WidthCapExceeded,
  MissingSymbol,
  NotAnAttackTree,
  ShapeMismatch,
  // semirings and interpretations
  UnknownSemiring,
  WeightNotStochastic,
  NotAbsorbing,
  ProbabilityOutOfRange,
  DuplicateBasLabel,
  EnumerationCapExceeded,
  // text formats
  SyntaxError,
  UnknownNodeRef,
  DuplicateNodeDecl,
  UnknownLabel,
  ValueParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateInput: return "DuplicateInput";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::LabelOnInput: return "LabelOnInput";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::WidthCapExceeded: return "WidthCapExceeded";
    case ErrorKind::MissingSymbol: return "MissingSymbol";
    case ErrorKind::NotAnAttackTree: return "NotAnAttackTree";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownSemiring: return "UnknownSemiring";
    case ErrorKind::WeightNotStochastic: return "WeightNotStochastic";
    case ErrorKind::NotAbsorbing: return "NotAbsorbing";
    case ErrorKind::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorKind::DuplicateBasLabel: return "DuplicateBasLabel";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownNodeRef: return "UnknownNodeRef";
    case ErrorKind::DuplicateNodeDecl: return "DuplicateNodeDecl";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ValueParseError: return "ValueParseError";
  }
  return "Unknown";
}

/// Source position (1-based) attached to errors raised by the text parsers.
struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// The single exception type thrown by the library. `kind()` identifies the
/// failure; the message names the offending node, label or location.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceLocation> where = std::nullopt)
      : std::runtime_error(format(kind, message, where)), kind_(kind), message_(message), where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind and location prefix.
  const std::string& message() const noexcept { return message_; }
  const std::optional<SourceLocation>& location() const noexcept { return where_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            const std::optional<SourceLocation>& where) {
    std::string out(to_string(kind));
    if (where) {
      out += " at " + std::to_string(where->line) + ":" + std::to_string(where->column);
    }
    out += ": ";
    out += message;
    return out;
  }

  ErrorKind kind_;
  std::string message_;
  std::optional<SourceLocation> where_;
};

}  // namespace atmet
