#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "strobo/coherent_sum.hpp"
#include "strobo/husimi_grid.hpp"
#include "strobo/outcomes.hpp"
#include "strobo/params.hpp"
#include "strobo/rng.hpp"

namespace strobo {

/// Conditional probabilities below this are treated as unreachable.
inline constexpr double kImpossibleOutcomeThreshold = 1e-15;
/// Parent norms below this make the conditional state undefined.
inline constexpr double kDegenerateNormSq = 1e-30;
/// O(4^N) energy sums are refused above this many steps unless overridden.
inline constexpr int kDefaultEnergyStepCap = 14;

/// Conditioned state after `step` measurements, as an unnormalized branch
/// sum with 2^step entries. Values are never mutated; each step yields a new
/// state.
struct TrajectoryState {
  SystemParams params;
  int step = 0;
  int spin = 1;  ///< s_N, the latest sigma_x eigenvalue.
  SignedCoherentSum branches;
  double norm_sq = 1.0;   ///< ||branches||^2, tracked through the steps.
  double log_prob = 0.0;  ///< log p_N of the record so far.
  OutcomeSequence record;

  double probability() const { return std::exp(log_prob); }
};

struct OutcomeProbabilities {
  double plus = 0.5;
  double minus = 0.5;
  double norm_plus = 0.0;   ///< ||candidate for s = +1||^2
  double norm_minus = 0.0;  ///< ||candidate for s = -1||^2

  double of(int outcome) const { return outcome > 0 ? plus : minus; }
  double norm_of(int outcome) const { return outcome > 0 ? norm_plus : norm_minus; }
};

struct StepCandidate {
  int outcome = 1;
  SignedCoherentSum branches;
  double probability = 0.0;
  double norm_sq = 0.0;
};

/// One row of a trajectory record.
struct StepRecord {
  int step = 0;
  int outcome = 1;
  double cond_prob = 1.0;
  double cum_prob = 1.0;
  double energy = 0.0;
};

TrajectoryState initial_state(const SystemParams& params, int s0);

/// p(s | record) for both s. Throws Error(capacity) at the step cap and
/// Error(degenerate_state) for a vanishing parent norm.
OutcomeProbabilities outcome_probabilities(const TrajectoryState& state);

/// Both candidate branch lists; [0] is s = +1, [1] is s = -1.
std::array<StepCandidate, 2> step_candidates(const TrajectoryState& state);

/// Forces `outcome`. Throws Error(impossible_outcome) when its conditional
/// probability is below kImpossibleOutcomeThreshold.
TrajectoryState advance(const TrajectoryState& state, int outcome,
                        const OutcomeProbabilities& probs);

/// Draws u in [0, 1) and takes s = +1 iff u < p(+1).
TrajectoryState sample_step(const TrajectoryState& state, UniformSource& rng);

TrajectoryState replay(const SystemParams& params, const OutcomeSequence& seq);

/// <H> of the normalized orbital state, in units of hbar * omega0.
double trajectory_energy(const TrajectoryState& state, int step_cap = kDefaultEnergyStepCap);

/// |<z|psi>|^2 at every node of `grid`.
HusimiGrid trajectory_husimi(const TrajectoryState& state, HusimiGrid grid);

/// Samples `steps` outcomes and returns the per-step records (row 0 is the
/// prepared state). `with_energy` adds the O(4^N) energy column.
std::vector<StepRecord> sample_records(const SystemParams& params, int s0, int steps,
                                       UniformSource& rng, bool with_energy,
                                       int energy_cap = kDefaultEnergyStepCap,
                                       TrajectoryState* final_state = nullptr);

/// Records for a forced outcome sequence.
std::vector<StepRecord> replay_records(const SystemParams& params, const OutcomeSequence& seq,
                                       bool with_energy, int energy_cap = kDefaultEnergyStepCap,
                                       TrajectoryState* final_state = nullptr);

/// Samples `count` trajectories of length `steps`; trajectory k draws from
/// UniformSource::for_stream(master_seed, k). Results are in index order.
std::vector<OutcomeSequence> sample_batch(const SystemParams& params, int s0, int steps,
                                          std::uint64_t master_seed, int count);

/// Depth-first walk over every reachable record of length `steps`, sharing
/// prefixes. Records whose conditional probability falls below
/// kImpossibleOutcomeThreshold are pruned.
void for_each_trajectory(const SystemParams& params, int s0, int steps,
                         const std::function<void(const TrajectoryState&)>& visit);

}  // namespace strobo
