#pragma once

#include <stdexcept>
#include <string>

namespace crossing {

// An invariant or strategy precondition was breached. The CLI maps this to
// exit code 2.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// A configured size or work limit was hit. The CLI maps this to exit code 3.
class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crossing
