#include "lip/error.hpp"

namespace lip {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::LevelViolation: return "LevelViolation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeBound: return "SizeBound";
    case ErrorCode::NotAHeytingFrame: return "NotAHeytingFrame";
    case ErrorCode::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotHeyting: return "NotHeyting";
    case ErrorCode::UncoveredVariable: return "UncoveredVariable";
    case ErrorCode::TermOutsideUniverse: return "TermOutsideUniverse";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotCutFree: return "NotCutFree";
    case ErrorCode::InvalidDerivation: return "InvalidDerivation";
    case ErrorCode::MissingPremise: return "MissingPremise";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::UnknownFunctionSymbol: return "UnknownFunctionSymbol";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace lip
