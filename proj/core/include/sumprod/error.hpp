#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumprod {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  OrderTooLarge,
  DivisionByZero,
  InvalidElement,
  EmptySet,
  FieldMismatch,
  EmptyOperand,
  ZeroDilation,
  TooSmall,
  ContainsZero,
  EmptyX,
  BadEpsilon,
  TooLarge,
  NoNonzeroGenerator,
  NoPopularPair,
  SlopeNotInXi,
  NotClassified,
  BudgetExceeded,
  Empty,
  InvalidArgument,
  MalformedFieldSpec,
  MalformedSetLiteral,
  UnknownCommand,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace sumprod
