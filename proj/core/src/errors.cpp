#include "strobo/errors.hpp"

namespace strobo {

std::string_view category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::invalid_argument: return "config";
    case ErrorCategory::capacity: return "capacity";
    case ErrorCategory::impossible_outcome: return "impossible-outcome";
    case ErrorCategory::truncation: return "truncation";
    case ErrorCategory::degenerate_state: return "numerical";
    case ErrorCategory::numerical: return "numerical";
  }
  return "numerical";
}

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::config:
    case ErrorCategory::invalid_argument: return 2;
    case ErrorCategory::capacity: return 3;
    case ErrorCategory::impossible_outcome: return 4;
    case ErrorCategory::truncation: return 5;
    case ErrorCategory::degenerate_state:
    case ErrorCategory::numerical: return 6;
  }
  return 6;
}

void raise(ErrorCategory category, const std::string& what) {
  throw Error(category, what);
}

}  // namespace strobo
