#include "strobo/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "strobo/errors.hpp"
#include "strobo/maps.hpp"
#include "strobo/numerics.hpp"

namespace strobo {

namespace {

void check_spin(int s, const char* what) {
  if (s != 1 && s != -1) raise(ErrorCategory::invalid_argument, std::string(what) + " must be +1 or -1");
}

void check_can_step(const TrajectoryState& state) {
  if (state.step >= state.params.max_steps) {
    raise(ErrorCategory::capacity, "step cap reached: max_steps = " +
                                       std::to_string(state.params.max_steps));
  }
  if (state.norm_sq < kDegenerateNormSq) {
    raise(ErrorCategory::degenerate_state, "branch sum norm vanished at step " +
                                               std::to_string(state.step));
  }
}

}  // namespace

TrajectoryState initial_state(const SystemParams& params, int s0) {
  params.validate();
  check_spin(s0, "s0");
  TrajectoryState state;
  state.params = params;
  state.spin = s0;
  state.branches = SignedCoherentSum::single(params.z0);
  state.record.initial = s0;
  return state;
}

OutcomeProbabilities outcome_probabilities(const TrajectoryState& state) {
  check_can_step(state);
  const SystemParams& params = state.params;
  const double cross = kick_cross_term(state.branches, params);

  // ||U_+ psi||^2 and ||U_- psi||^2 equal the parent norm when the branch
  // phases are exact; the dropped-phase maps are not unitary.
  double norm_p = state.norm_sq;
  double norm_m = state.norm_sq;
  if (params.phases == PhaseConvention::dropped) {
    norm_p = sum_norm_sq(apply_kick(state.branches, 1, params), params.prune_exponent);
    norm_m = sum_norm_sq(apply_kick(state.branches, -1, params), params.prune_exponent);
  }

  OutcomeProbabilities probs;
  // sigma = s * s_N multiplies the Z_- half of the candidate.
  probs.norm_plus = std::max(0.0, norm_p + norm_m + 2.0 * state.spin * cross);
  probs.norm_minus = std::max(0.0, norm_p + norm_m - 2.0 * state.spin * cross);
  probs.plus = probs.norm_plus / (4.0 * state.norm_sq);
  probs.minus = probs.norm_minus / (4.0 * state.norm_sq);
  return probs;
}

std::array<StepCandidate, 2> step_candidates(const TrajectoryState& state) {
  const OutcomeProbabilities probs = outcome_probabilities(state);
  std::array<StepCandidate, 2> out;
  for (int k = 0; k < 2; ++k) {
    const int s = k == 0 ? 1 : -1;
    out[k].outcome = s;
    out[k].branches = kick_and_project(state.branches, s * state.spin, state.params);
    out[k].probability = probs.of(s);
    out[k].norm_sq = probs.norm_of(s);
  }
  return out;
}

TrajectoryState advance(const TrajectoryState& state, int outcome,
                        const OutcomeProbabilities& probs) {
  check_spin(outcome, "outcome");
  const double p = probs.of(outcome);
  if (!(p >= kImpossibleOutcomeThreshold)) {
    raise(ErrorCategory::impossible_outcome,
          "outcome " + std::string(outcome > 0 ? "+" : "-") + " at step " +
              std::to_string(state.step + 1) + " has conditional probability " +
              std::to_string(p));
  }
  TrajectoryState next;
  next.params = state.params;
  next.step = state.step + 1;
  next.spin = outcome;
  next.branches = kick_and_project(state.branches, outcome * state.spin, state.params);
  next.norm_sq = probs.norm_of(outcome);
  next.log_prob = state.log_prob + std::log(p);
  next.record = state.record;
  next.record.outcomes.push_back(outcome);
  return next;
}

TrajectoryState sample_step(const TrajectoryState& state, UniformSource& rng) {
  const OutcomeProbabilities probs = outcome_probabilities(state);
  const double u = rng.next();
  return advance(state, u < probs.plus ? 1 : -1, probs);
}

TrajectoryState replay(const SystemParams& params, const OutcomeSequence& seq) {
  seq.validate();
  if (seq.length() > params.max_steps) {
    raise(ErrorCategory::capacity, "record has " + std::to_string(seq.length()) +
                                       " outcomes but max_steps = " +
                                       std::to_string(params.max_steps));
  }
  TrajectoryState state = initial_state(params, seq.initial);
  for (int s : seq.outcomes) state = advance(state, s, outcome_probabilities(state));
  return state;
}

double trajectory_energy(const TrajectoryState& state, int step_cap) {
  if (state.step > step_cap) {
    raise(ErrorCategory::capacity, "energy evaluation is O(4^N); N = " +
                                       std::to_string(state.step) + " exceeds the cap " +
                                       std::to_string(step_cap));
  }
  if (state.norm_sq < kDegenerateNormSq) {
    raise(ErrorCategory::degenerate_state, "cannot normalize a vanishing branch sum");
  }
  const double numerator = sum_number_expectation(state.branches, state.params.prune_exponent);
  return numerator / state.norm_sq;
}

HusimiGrid trajectory_husimi(const TrajectoryState& state, HusimiGrid grid) {
  if (state.norm_sq < kDegenerateNormSq) {
    raise(ErrorCategory::degenerate_state, "cannot normalize a vanishing branch sum");
  }
  const int np = grid.np();
  const std::size_t nodes = grid.size();
  auto values = grid.values();
  parallel_for(nodes, [&](std::size_t k) {
    const int iq = static_cast<int>(k / static_cast<std::size_t>(np));
    const int ip = static_cast<int>(k % static_cast<std::size_t>(np));
    const double h = std::norm(sum_amplitude_at(state.branches, grid.node(iq, ip))) / state.norm_sq;
    values[k] = std::min(h, 1.0);
  });
  return grid;
}

namespace {

StepRecord record_of(const TrajectoryState& state, double cond_prob, bool with_energy,
                     int energy_cap) {
  StepRecord r;
  r.step = state.step;
  r.outcome = state.spin;
  r.cond_prob = cond_prob;
  r.cum_prob = state.probability();
  r.energy = with_energy ? trajectory_energy(state, energy_cap)
                         : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

std::vector<StepRecord> sample_records(const SystemParams& params, int s0, int steps,
                                       UniformSource& rng, bool with_energy, int energy_cap,
                                       TrajectoryState* final_state) {
  if (steps > params.max_steps) {
    raise(ErrorCategory::capacity, "steps exceeds max_steps = " + std::to_string(params.max_steps));
  }
  if (with_energy && steps > energy_cap) {
    raise(ErrorCategory::capacity, "energy column requested beyond the O(4^N) cap of " +
                                       std::to_string(energy_cap) + " steps");
  }
  TrajectoryState state = initial_state(params, s0);
  std::vector<StepRecord> rows;
  rows.push_back(record_of(state, 1.0, with_energy, energy_cap));
  for (int n = 0; n < steps; ++n) {
    const OutcomeProbabilities probs = outcome_probabilities(state);
    const int s = rng.next() < probs.plus ? 1 : -1;
    state = advance(state, s, probs);
    rows.push_back(record_of(state, probs.of(s), with_energy, energy_cap));
  }
  if (final_state) *final_state = std::move(state);
  return rows;
}

std::vector<StepRecord> replay_records(const SystemParams& params, const OutcomeSequence& seq,
                                       bool with_energy, int energy_cap,
                                       TrajectoryState* final_state) {
  seq.validate();
  if (seq.length() > params.max_steps) {
    raise(ErrorCategory::capacity, "record longer than max_steps = " +
                                       std::to_string(params.max_steps));
  }
  if (with_energy && seq.length() > energy_cap) {
    raise(ErrorCategory::capacity, "energy column requested beyond the O(4^N) cap of " +
                                       std::to_string(energy_cap) + " steps");
  }
  TrajectoryState state = initial_state(params, seq.initial);
  std::vector<StepRecord> rows;
  rows.push_back(record_of(state, 1.0, with_energy, energy_cap));
  for (int s : seq.outcomes) {
    const OutcomeProbabilities probs = outcome_probabilities(state);
    state = advance(state, s, probs);
    rows.push_back(record_of(state, probs.of(s), with_energy, energy_cap));
  }
  if (final_state) *final_state = std::move(state);
  return rows;
}

std::vector<OutcomeSequence> sample_batch(const SystemParams& params, int s0, int steps,
                                          std::uint64_t master_seed, int count) {
  if (count < 0) raise(ErrorCategory::invalid_argument, "batch size must be >= 0");
  if (steps > params.max_steps) {
    raise(ErrorCategory::capacity, "steps exceeds max_steps = " + std::to_string(params.max_steps));
  }
  params.validate();
  std::vector<OutcomeSequence> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t k) {
    UniformSource rng = UniformSource::for_stream(master_seed, k);
    TrajectoryState state = initial_state(params, s0);
    for (int n = 0; n < steps; ++n) state = sample_step(state, rng);
    out[k] = state.record;
  });
  return out;
}

namespace {

void walk(const TrajectoryState& state, int steps,
          const std::function<void(const TrajectoryState&)>& visit) {
  if (state.step == steps) {
    visit(state);
    return;
  }
  const OutcomeProbabilities probs = outcome_probabilities(state);
  for (int s : {1, -1}) {
    if (probs.of(s) < kImpossibleOutcomeThreshold) continue;
    walk(advance(state, s, probs), steps, visit);
  }
}

}  // namespace

void for_each_trajectory(const SystemParams& params, int s0, int steps,
                         const std::function<void(const TrajectoryState&)>& visit) {
  if (steps < 0 || steps > params.max_steps) {
    raise(ErrorCategory::capacity, "steps must lie in [0, max_steps]");
  }
  walk(initial_state(params, s0), steps, visit);
}

}  // namespace strobo
