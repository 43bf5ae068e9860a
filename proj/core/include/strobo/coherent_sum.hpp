#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "strobo/params.hpp"

namespace strobo {

/// Unnormalized superposition sum_I c_I e^{i phi_I} |Z_I>, stored in
/// canonical branch order (bit j-1 of the position is set iff i_j == -1).
///
/// `sign` is the measurement-record coefficient c_I (exactly ±1); `phase`
/// is the outcome-independent dynamical phase of the branch.
class SignedCoherentSum {
 public:
  SignedCoherentSum() = default;

  /// The single-branch state (+1, z).
  static SignedCoherentSum single(Complex z);

  std::size_t size() const noexcept { return centers_.size(); }
  bool empty() const noexcept { return centers_.empty(); }

  void reserve(std::size_t n);
  void push_back(int sign, double phase, Complex center);

  std::span<const Complex> centers() const noexcept { return centers_; }
  std::span<const int> signs() const noexcept { return signs_; }
  std::span<const double> phases() const noexcept { return phases_; }

  Complex center(std::size_t i) const { return centers_[i]; }
  int sign(std::size_t i) const { return signs_[i]; }
  double phase(std::size_t i) const { return phases_[i]; }
  /// c_I e^{i phi_I}.
  Complex weight(std::size_t i) const;

  /// Every branch sign multiplied by -1.
  SignedCoherentSum negated() const;

 private:
  std::vector<Complex> centers_;
  std::vector<int> signs_;
  std::vector<double> phases_;
};

/// Gram sums skip pairs whose overlap exponent -|Zi - Zj|^2/2 lies below
/// this cutoff: kUnderflowExponent when pruning is off.
double gram_cutoff(double prune_exponent) noexcept;

/// ||sum_I c_I |Z_I>||^2, compensated and in canonical order; clamped to >= 0.
double sum_norm_sq(const SignedCoherentSum& sum, double prune_exponent = 0.0);

/// <bra|ket> for two branch sums.
Complex sum_overlap(const SignedCoherentSum& bra, const SignedCoherentSum& ket,
                    double prune_exponent = 0.0);

/// <sum| (a^dagger a + 1/2) |sum>, unnormalized.
double sum_number_expectation(const SignedCoherentSum& sum, double prune_exponent = 0.0);

/// sum_I c_I e^{i phi_I} <z|Z_I>.
Complex sum_amplitude_at(const SignedCoherentSum& sum, Complex z);

/// Image of every branch under Z_sign, with its dynamical phase; signs kept.
SignedCoherentSum apply_kick(const SignedCoherentSum& sum, int sign, const SystemParams& params);

/// Branch doubling for one period followed by a sigma_x projection with
/// relative sign `sigma` = s_{N+1} s_N: the first half holds the Z_+ images,
/// the second half the Z_- images with signs multiplied by sigma.
SignedCoherentSum kick_and_project(const SignedCoherentSum& sum, int sigma,
                                   const SystemParams& params);

/// Re <U_+ sum | U_- sum> computed from the parent list, O(size^2).
double kick_cross_term(const SignedCoherentSum& sum, const SystemParams& params);

}  // namespace strobo
