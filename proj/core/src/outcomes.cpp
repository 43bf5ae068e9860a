#include "strobo/outcomes.hpp"

#include "strobo/errors.hpp"

namespace strobo {

OutcomeSequence OutcomeSequence::parse(std::string_view record, int initial) {
  OutcomeSequence seq;
  seq.initial = initial;
  seq.outcomes.reserve(record.size());
  for (char c : record) {
    if (c == '+') {
      seq.outcomes.push_back(1);
    } else if (c == '-') {
      seq.outcomes.push_back(-1);
    } else {
      raise(ErrorCategory::config,
            std::string("outcomes: expected only '+' or '-', found '") + c + "'");
    }
  }
  seq.validate();
  return seq;
}

std::string OutcomeSequence::record() const {
  std::string out;
  out.reserve(outcomes.size());
  for (int s : outcomes) out.push_back(s > 0 ? '+' : '-');
  return out;
}

void OutcomeSequence::validate() const {
  if (initial != 1 && initial != -1) raise(ErrorCategory::config, "s0 must be +1 or -1");
  for (int s : outcomes) {
    if (s != 1 && s != -1) raise(ErrorCategory::config, "outcomes must be +1 or -1");
  }
}

}  // namespace strobo
