#include "strobo/echo.hpp"

#include <algorithm>
#include <cmath>

#include "strobo/coherent_sum.hpp"
#include "strobo/errors.hpp"

namespace strobo {

SystemParams perturbed_params(const SystemParams& params, double delta_R, bool hold_kick) {
  if (!std::isfinite(delta_R)) raise(ErrorCategory::config, "delta_R must be finite");
  SystemParams out = params;
  out.ratio = params.ratio + delta_R;
  if (!(out.ratio > 0.0)) raise(ErrorCategory::config, "R + delta_R must stay positive");
  if (!hold_kick) out.kick = params.kick * params.ratio / out.ratio;
  return out;
}

double echo_fidelity(const TrajectoryState& a, const TrajectoryState& b) {
  if (a.norm_sq < kDegenerateNormSq || b.norm_sq < kDegenerateNormSq) {
    raise(ErrorCategory::degenerate_state, "echo of a vanishing state");
  }
  const double prune = std::min(a.params.prune_exponent, b.params.prune_exponent);
  const Complex overlap = sum_overlap(a.branches, b.branches, prune);
  return std::clamp(std::norm(overlap) / (a.norm_sq * b.norm_sq), 0.0, 1.0);
}

std::vector<double> loschmidt_echo_between(const SystemParams& a, const SystemParams& b,
                                           const OutcomeSequence& seq) {
  seq.validate();
  const int cap = std::min(a.max_steps, b.max_steps);
  if (seq.length() > cap) {
    raise(ErrorCategory::capacity, "record longer than max_steps = " + std::to_string(cap));
  }
  TrajectoryState sa = initial_state(a, seq.initial);
  TrajectoryState sb = initial_state(b, seq.initial);
  std::vector<double> echo;
  echo.reserve(seq.outcomes.size());
  for (int s : seq.outcomes) {
    sa = advance(sa, s, outcome_probabilities(sa));
    sb = advance(sb, s, outcome_probabilities(sb));
    echo.push_back(echo_fidelity(sa, sb));
  }
  return echo;
}

std::vector<double> loschmidt_echo(const SystemParams& params, double delta_R,
                                   const OutcomeSequence& seq, bool hold_kick) {
  return loschmidt_echo_between(params, perturbed_params(params, delta_R, hold_kick), seq);
}

}  // namespace strobo
