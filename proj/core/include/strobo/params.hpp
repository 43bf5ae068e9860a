#pragma once

#include <complex>
#include <numbers>
#include <optional>

namespace strobo {

using Complex = std::complex<double>;

/// How the dynamical phase picked up by each coherent branch is treated.
///
/// A kick Z_± is a displaced rotation, and a displacement multiplies the
/// coherent state |z> by a phase that depends on z. `exact` carries that
/// phase on every branch, which reproduces the true Schrodinger dynamics.
/// `dropped` keeps bare ±1 signs only; it is kept for comparison studies. Its
/// outcome probabilities are wrong from the first step, and from the second
/// step on the two conditional probabilities no longer sum to one.
enum class PhaseConvention { exact, dropped };

/// Dimensionless model parameters (hbar = 1, b = 1, energies in hbar*omega0).
struct SystemParams {
  double ratio = 0.0;  ///< R = omega0 / omega; rotation per period is 2*pi*R.
  double kick = 0.0;   ///< v = alpha / (hbar * omega0).
  Complex z0{0.0, 0.0};
  std::optional<double> larmor_period;  ///< T_L, only sets the power unit.
  int max_steps = 20;
  /// 0 disables pruning. A negative value drops Gram pairs whose Gaussian
  /// overlap exponent -|z1 - z2|^2 / 2 lies below it.
  double prune_exponent = 0.0;
  PhaseConvention phases = PhaseConvention::exact;

  double rotation_angle() const noexcept { return 2.0 * std::numbers::pi * ratio; }

  /// Throws Error(config) when an invariant is violated.
  void validate() const;
};

inline constexpr int kDefaultMaxSteps = 20;

}  // namespace strobo
