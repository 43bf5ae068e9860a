#pragma once

#include <span>
#include <utility>
#include <vector>

#include "strobo/coherent_sum.hpp"
#include "strobo/outcomes.hpp"
#include "strobo/params.hpp"

namespace strobo {

/// Brute-force reference for the branch engine: the oscillator lives in a
/// truncated number basis |0>..|n_max> and each period is a dense
/// spectral exponential of H_± = a^dagger a + 1/2 ∓ v (a + a^dagger).

/// Coherent-state amplitudes must not lose more than this to truncation.
inline constexpr double kMaxFockDeficit = 1e-8;
/// Occupation of the top ten levels above this invalidates a propagation.
inline constexpr double kMaxBoundaryOccupation = 1e-10;

struct CoherentFock {
  std::vector<Complex> amplitudes;  ///< n = 0..n_max.
  double deficit = 0.0;             ///< 1 - sum |amplitude|^2.
};

/// e^{-|z|^2/2} z^n / sqrt(n!) through a log recurrence. Throws
/// Error(truncation) when the deficit exceeds kMaxFockDeficit.
CoherentFock coherent_in_fock(Complex z, int n_max);

/// Real symmetric tridiagonal matrix in units of hbar * omega0.
struct TridiagonalHamiltonian {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  ///< (n, n+1) couplings, size n_max.

  int n_max() const noexcept { return static_cast<int>(diagonal.size()) - 1; }
};

/// {H_+, H_-}.
std::pair<TridiagonalHamiltonian, TridiagonalHamiltonian> build_hpm(double v, int n_max);

/// Eigenvalues of h in ascending order.
std::vector<double> spectrum(const TridiagonalHamiltonian& h);

/// exp(-i phase h) vec, from a cached eigendecomposition of h.
std::vector<Complex> propagate(const TridiagonalHamiltonian& h, double phase,
                               std::span<const Complex> vec);

/// Oscillator ⊗ spin state: (spin +, n = 0..n_max) then (spin -, n = 0..n_max),
/// spin in the sigma_z basis.
struct FockCompositeVector {
  int n_max = 0;
  std::vector<Complex> amplitudes;

  /// orbital ⊗ |s>_x.
  static FockCompositeVector product(std::span<const Complex> orbital, int s);

  std::span<Complex> plus_block() { return {amplitudes.data(), block()}; }
  std::span<Complex> minus_block() { return {amplitudes.data() + block(), block()}; }
  std::span<const Complex> plus_block() const { return {amplitudes.data(), block()}; }
  std::span<const Complex> minus_block() const { return {amplitudes.data() + block(), block()}; }

  double norm_sq() const;

 private:
  std::size_t block() const noexcept { return static_cast<std::size_t>(n_max) + 1; }
};

struct OracleResult {
  std::vector<Complex> orbital;  ///< normalized, in the last measured sector.
  double probability = 1.0;
  std::vector<double> conditional;  ///< p(s_j | s_0..s_{j-1}), j = 1..N.
};

/// Evolves |z0>|s0>_x period by period and projects on each recorded
/// outcome. Throws Error(truncation) on boundary occupation and
/// Error(impossible_outcome) below the usual conditional-probability floor.
OracleResult oracle_replay(const SystemParams& params, const OutcomeSequence& seq, int n_max);

/// ceil(r^2 + 10 r + 20) with r = |z0| + 2 |v| N.
int recommended_n_max(const SystemParams& params, int n_steps);

/// sum_I c_I e^{i phi_I} |Z_I> written in the number basis (unnormalized).
std::vector<Complex> expand_in_fock(const SignedCoherentSum& sum, int n_max);

/// |<a|b>|^2 / (||a||^2 ||b||^2).
double fidelity(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace strobo
