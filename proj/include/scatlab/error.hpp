#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scat {

enum class ErrorCode {
  NotSkewSymmetrizable,
  IndexOutOfRange,
  UnfrozenOnly,
  BudgetExceeded,
  OrderMismatch,
  NotInvertible,
  ExponentLeavesCone,
  NotPrimitive,
  NotInNPlus,
  NotGeneric,
  EndpointOnSupport,
  NotGeneral,
  Inconsistent,
  NotRank2,
  NotMinimalSupport,
  RankUnsupported,
  NonGenericEndpoint,
  ZeroExponent,
  NotInChamberFan,
  InvalidArgument,
  ParseError,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace scat
