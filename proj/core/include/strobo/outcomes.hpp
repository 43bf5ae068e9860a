#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace strobo {

/// Record of sigma_x outcomes: s0 (the prepared eigenvalue) followed by
/// s_1..s_N. Entries are exactly +1 or -1.
struct OutcomeSequence {
  int initial = 1;
  std::vector<int> outcomes;

  int length() const noexcept { return static_cast<int>(outcomes.size()); }

  /// s_j with s_0 == initial.
  int at(int j) const { return j == 0 ? initial : outcomes.at(static_cast<std::size_t>(j - 1)); }

  /// Parses a "+-+-" record. Throws Error(config) on any other character.
  static OutcomeSequence parse(std::string_view record, int initial = 1);

  std::string record() const;

  void validate() const;

  bool operator==(const OutcomeSequence&) const = default;
};

}  // namespace strobo
