#pragma once

#include <stdexcept>
#include <string>

namespace locz {

enum class ErrorCode {
  InvalidArgument,
  DisconnectedGraph,
  InvalidK,
  BudgetExceeded,
  IllegalRobberMove,
  InvalidPair,
  CaseMismatch,
  EpsOutOfRange,
  DegenerateRegime,
  TooManyDisconnectedResamples,
  Parse,
  Io,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locz
