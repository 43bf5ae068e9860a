#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "strobo/outcomes.hpp"
#include "strobo/params.hpp"

namespace strobo {

/// Kick labels I_N = {i_N, ..., i_1}, i_1 applied first.
///
/// Stored as the canonical binary code: bit (j - 1) is set iff i_j == -1.
class BranchIndex {
 public:
  static constexpr int kMaxLength = 62;

  BranchIndex() = default;
  /// Throws Error(invalid_argument) when length is out of range or code has
  /// bits at or above `length`.
  BranchIndex(std::uint64_t code, int length);

  /// kicks[0] is i_1.
  static BranchIndex from_kicks(std::span<const int> kicks);

  int length() const noexcept { return length_; }
  std::uint64_t code() const noexcept { return code_; }

  /// i_j for 1 <= j <= length().
  int kick(int j) const;

  std::vector<int> kicks() const;

 private:
  std::uint64_t code_ = 0;
  int length_ = 0;
};

/// Z_±(z) = (z ∓ v) e^{-2 pi i R} ± v.
Complex map_apply(Complex z, int sign, const SystemParams& params);

/// Phase acquired by |z> under the sign-branch propagator, beyond the
/// branch-independent global factor: U_± |z> ∝ e^{i phi} |Z_±(z)> with
/// phi = ±v (Im z - Im Z_±(z)). Zero under PhaseConvention::dropped.
double kick_phase(Complex z, int sign, const SystemParams& params);

/// Z_I = (z0 + 2 i v e^{-i wT/2} sin(wT/2) sum_j i_j e^{i wT j}) e^{-i N wT}.
Complex compose_closed_form(const SystemParams& params, const BranchIndex& index);

struct TranslationRotation {
  Complex translation;  ///< W_I, independent of z0.
  double angle;         ///< theta = -2 pi R N.
};

/// Z_I = e^{i theta} (z0 + W_I).
TranslationRotation decompose_translation_rotation(const SystemParams& params,
                                                   const BranchIndex& index);

/// c_I = prod_j (s_j s_{j-1})^{[i_j == -1]}. Throws Error(invalid_argument)
/// on a length mismatch.
int sign_coefficient(const BranchIndex& index, const OutcomeSequence& outcomes);

/// log <z1|z2> = conj(z1) z2 - |z1|^2/2 - |z2|^2/2, with the real part
/// evaluated as -|z1 - z2|^2 / 2.
Complex log_coherent_overlap(Complex z1, Complex z2) noexcept;

/// <z1|z2>; exactly zero once the exponent drops below -745.
Complex coherent_overlap(Complex z1, Complex z2) noexcept;

/// <z1| a^dagger a |z2> = conj(z1) z2 <z1|z2>.
Complex number_matrix_element(Complex z1, Complex z2) noexcept;

inline constexpr double kUnderflowExponent = -745.0;

}  // namespace strobo
