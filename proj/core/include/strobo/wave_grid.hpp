#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "strobo/husimi_grid.hpp"
#include "strobo/outcomes.hpp"
#include "strobo/params.hpp"
#include "strobo/rng.hpp"
#include "strobo/trajectory.hpp"

namespace strobo {

/// Self-dual position grid (units of b): `points` samples with spacing
/// sqrt(2 pi / points), so the momentum grid has the same spacing and extent.
struct GridLayout {
  std::size_t points = 0;
  double spacing = 0.0;

  double half_width() const noexcept { return 0.5 * spacing * static_cast<double>(points); }

  static GridLayout with_points(std::size_t points);

  /// Smallest power-of-two layout that holds every coherent branch reachable
  /// within `steps` periods, including the intermediate shears of a rotation.
  static GridLayout for_steps(const SystemParams& params, int steps);
  static GridLayout for_steps(std::span<const SystemParams> params, int steps);

  bool operator==(const GridLayout&) const = default;
};

namespace detail {
class GridKernel;
}

/// Trajectory evolved as a sampled wavefunction instead of a branch sum.
///
/// Each period applies U_± = D(±v) e^{-i 2 pi R n} D(∓v) to the two spin
/// components with FFT-based translations and a three-shear rotation. The
/// cost per step is O(M log M) in the grid size, independent of 2^N, which
/// makes records far beyond the Gram-sum range tractable.
class WavefunctionTrajectory {
 public:
  WavefunctionTrajectory(const SystemParams& params, int s0, GridLayout layout);

  const SystemParams& params() const noexcept { return params_; }
  const GridLayout& layout() const noexcept { return layout_; }
  int step() const noexcept { return step_; }
  int spin() const noexcept { return spin_; }
  double log_prob() const noexcept { return log_prob_; }
  double probability() const;
  const OutcomeSequence& record() const noexcept { return record_; }

  /// Conditional probabilities of the next outcome; norm_* fields hold the
  /// same values since the current state is normalized.
  OutcomeProbabilities outcome_probabilities() const;

  /// Forces `outcome`; Error(impossible_outcome) below the usual threshold.
  void advance(int outcome);

  double energy() const;

  /// <z|psi>.
  Complex amplitude_at(Complex z) const;

  HusimiGrid husimi(HusimiGrid grid) const;

  /// <this|other>; both must share a layout.
  Complex overlap(const WavefunctionTrajectory& other) const;

  std::span<const Complex> samples() const noexcept { return psi_; }

 private:
  void evolve_components() const;

  SystemParams params_;
  GridLayout layout_;
  std::shared_ptr<const detail::GridKernel> kernel_;
  std::vector<Complex> psi_;
  int step_ = 0;
  int spin_ = 1;
  double log_prob_ = 0.0;
  OutcomeSequence record_;

  mutable bool evolved_ = false;
  mutable std::vector<Complex> plus_;
  mutable std::vector<Complex> minus_;
};

std::vector<StepRecord> grid_sample_records(const SystemParams& params, int s0, int steps,
                                            UniformSource& rng, bool with_energy,
                                            OutcomeSequence* record = nullptr);

std::vector<StepRecord> grid_replay_records(const SystemParams& params, const OutcomeSequence& seq,
                                            bool with_energy);

std::vector<double> grid_loschmidt_echo(const SystemParams& params, double delta_R,
                                        const OutcomeSequence& seq, bool hold_kick = false);

}  // namespace strobo
