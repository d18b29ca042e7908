#include "locz/error.hpp"

namespace locz {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IllegalRobberMove: return "IllegalRobberMove";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::DegenerateRegime: return "DegenerateRegime";
    case ErrorCode::TooManyDisconnectedResamples: return "TooManyDisconnectedResamples";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace locz
