#pragma once

#include <stdexcept>
#include <string>

namespace nalength {

/// Library error. `code()` is module-qualified, e.g. "exactfield.dimension_mismatch".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace nalength
