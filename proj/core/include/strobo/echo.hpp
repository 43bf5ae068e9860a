#pragma once

#include <vector>

#include "strobo/outcomes.hpp"
#include "strobo/params.hpp"
#include "strobo/trajectory.hpp"

namespace strobo {

/// Parameters of the perturbed evolution: R' = R + delta_R at fixed
/// stroboscopic frequency and fixed b. By default the coupling alpha is held,
/// so v' = v R / R'; `hold_kick` keeps v' = v instead.
SystemParams perturbed_params(const SystemParams& params, double delta_R, bool hold_kick = false);

/// |<a|b>|^2 of the two normalized orbital states.
double echo_fidelity(const TrajectoryState& a, const TrajectoryState& b);

/// L_1..L_N for `seq` evolved under `a` and under `b`. Throws
/// Error(impossible_outcome) if the record is unreachable under either.
std::vector<double> loschmidt_echo_between(const SystemParams& a, const SystemParams& b,
                                           const OutcomeSequence& seq);

std::vector<double> loschmidt_echo(const SystemParams& params, double delta_R,
                                   const OutcomeSequence& seq, bool hold_kick = false);

}  // namespace strobo
