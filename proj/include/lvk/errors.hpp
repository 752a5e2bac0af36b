#pragma once

#include <stdexcept>
#include <string>

namespace lvk {

/// Malformed input: bad rational literal, unknown JSON key, wrong shape.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that the mathematics refuses (singular Gram matrix,
/// invalid stable graph, inconsistent relation system, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lvk
