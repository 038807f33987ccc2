#pragma once

#include <stdexcept>
#include <string>

namespace mapspan {

enum class ErrorCode {
  NotATree,
  AllRouters,
  BadLink,
  BadFactor,
  ParseError,
  AsymmetricEdge,
  SelfLoop,
  BadWeight,
  MissingRoute,
  InvalidPath,
  InfeasibleMapping,
  InfeasibleTarget,
  TooLarge,
  Infeasible,
  Overflow,
  IoError,
};

const char* to_string(ErrorCode code);

// Every domain error carries a code so callers (and the CLI exit-code
// mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::AllRouters: return "AllRouters";
    case ErrorCode::BadLink: return "BadLink";
    case ErrorCode::BadFactor: return "BadFactor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AsymmetricEdge: return "AsymmetricEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::MissingRoute: return "MissingRoute";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InfeasibleMapping: return "InfeasibleMapping";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace mapspan
