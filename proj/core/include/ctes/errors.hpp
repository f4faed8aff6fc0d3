#pragma once

#include <stdexcept>
#include <string>

namespace ctes {

// Invalid construction parameters (M < 2, j < 1, degenerate windows, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation (xi <= 0, ell = 0, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ctes
