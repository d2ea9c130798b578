#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace factoradic {

enum class ErrorKind {
  kDomain,           // argument outside the operation's domain
  kOverflow,         // a sum left [0, 1)
  kOracle,           // a perfect-set oracle broke its contract
  kBudget,           // configured depth or size budget exceeded
  kParse,            // malformed input
  kInfeasible,       // no admissible translation digit exists
  kInvalidArgument,  // structurally invalid argument (bad policy, bad slalom, ...)
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace factoradic
