#pragma once

#include <stdexcept>
#include <string>

namespace harmsum {

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an iterative scheme cannot reach its target within budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace harmsum
