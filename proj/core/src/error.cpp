#include "sumprod/error.hpp"

namespace sumprod {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InvalidElement: return "InvalidElement";
    case Errc::EmptySet: return "EmptySet";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::EmptyOperand: return "EmptyOperand";
    case Errc::ZeroDilation: return "ZeroDilation";
    case Errc::TooSmall: return "TooSmall";
    case Errc::ContainsZero: return "ContainsZero";
    case Errc::EmptyX: return "EmptyX";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoNonzeroGenerator: return "NoNonzeroGenerator";
    case Errc::NoPopularPair: return "NoPopularPair";
    case Errc::SlopeNotInXi: return "SlopeNotInXi";
    case Errc::NotClassified: return "NotClassified";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Empty: return "Empty";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedFieldSpec: return "MalformedFieldSpec";
    case Errc::MalformedSetLiteral: return "MalformedSetLiteral";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace sumprod
