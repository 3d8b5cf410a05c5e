#pragma once

#include <stdexcept>
#include <string>

namespace lip {

enum class ErrorCode {
  Parse,
  LevelViolation,
  IndexOutOfRange,
  SizeBound,
  NotAHeytingFrame,
  NotAPartialOrder,
  NotALattice,
  NotHeyting,
  UncoveredVariable,
  TermOutsideUniverse,
  InvalidPartition,
  NotCutFree,
  InvalidDerivation,
  MissingPremise,
  InvalidCertificate,
  NotPositive,
  UnknownFunctionSymbol,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Single exception type for the library; the code identifies the failure
// class named in the public contracts.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::Parse, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace lip
