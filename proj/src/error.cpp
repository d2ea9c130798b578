#include "factoradic/error.hpp"

namespace factoradic {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain:
      return "domain";
    case ErrorKind::kOverflow:
      return "overflow";
    case ErrorKind::kOracle:
      return "oracle";
    case ErrorKind::kBudget:
      return "budget";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kInvalidArgument:
      return "invalid-argument";
  }
  return "unknown";
}

}  // namespace factoradic
