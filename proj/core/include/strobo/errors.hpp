#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strobo {

/// Failure classes surfaced by the library. The CLI maps each one onto a
/// process exit code (see exit_code()).
enum class ErrorCategory {
  config,
  invalid_argument,
  capacity,
  impossible_outcome,
  truncation,
  degenerate_state,
  numerical,
};

std::string_view category_name(ErrorCategory category) noexcept;

/// 2 config, 3 capacity, 4 impossible-outcome, 5 truncation, 6 numerical.
/// invalid_argument reports as config and degenerate_state as numerical.
int exit_code(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] void raise(ErrorCategory category, const std::string& what);

}  // namespace strobo
