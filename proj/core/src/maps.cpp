#include "strobo/maps.hpp"

#include <cmath>
#include <string>

#include "strobo/errors.hpp"

namespace strobo {

BranchIndex::BranchIndex(std::uint64_t code, int length) : code_(code), length_(length) {
  if (length < 0 || length > kMaxLength) {
    raise(ErrorCategory::invalid_argument,
          "branch index length must lie in [0, 62], got " + std::to_string(length));
  }
  if (length < 64 && (code >> length) != 0) {
    raise(ErrorCategory::invalid_argument, "branch code has bits beyond its length");
  }
}

BranchIndex BranchIndex::from_kicks(std::span<const int> kicks) {
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < kicks.size(); ++j) {
    if (kicks[j] == -1) {
      code |= std::uint64_t{1} << j;
    } else if (kicks[j] != 1) {
      raise(ErrorCategory::invalid_argument, "kick labels must be +1 or -1");
    }
  }
  return BranchIndex(code, static_cast<int>(kicks.size()));
}

int BranchIndex::kick(int j) const {
  if (j < 1 || j > length_) raise(ErrorCategory::invalid_argument, "kick position out of range");
  return ((code_ >> (j - 1)) & 1U) ? -1 : 1;
}

std::vector<int> BranchIndex::kicks() const {
  std::vector<int> out(static_cast<std::size_t>(length_));
  for (int j = 1; j <= length_; ++j) out[static_cast<std::size_t>(j - 1)] = kick(j);
  return out;
}

Complex map_apply(Complex z, int sign, const SystemParams& params) {
  const double v = sign * params.kick;
  return (z - v) * std::polar(1.0, -params.rotation_angle()) + v;
}

double kick_phase(Complex z, int sign, const SystemParams& params) {
  if (params.phases == PhaseConvention::dropped) return 0.0;
  const Complex image = map_apply(z, sign, params);
  return sign * params.kick * (z.imag() - image.imag());
}

TranslationRotation decompose_translation_rotation(const SystemParams& params,
                                                   const BranchIndex& index) {
  const double wt = params.rotation_angle();
  const int n = index.length();
  Complex sum{0.0, 0.0};
  for (int j = 1; j <= n; ++j) {
    sum += static_cast<double>(index.kick(j)) * std::polar(1.0, wt * j);
  }
  const Complex prefactor =
      Complex(0.0, 2.0 * params.kick) * std::polar(1.0, -0.5 * wt) * std::sin(0.5 * wt);
  return {prefactor * sum, -wt * n};
}

Complex compose_closed_form(const SystemParams& params, const BranchIndex& index) {
  const auto [translation, angle] = decompose_translation_rotation(params, index);
  return (params.z0 + translation) * std::polar(1.0, angle);
}

int sign_coefficient(const BranchIndex& index, const OutcomeSequence& outcomes) {
  if (index.length() != outcomes.length()) {
    raise(ErrorCategory::invalid_argument,
          "sign_coefficient: index has " + std::to_string(index.length()) +
              " kicks but the record has " + std::to_string(outcomes.length()) + " outcomes");
  }
  int c = 1;
  for (int j = 1; j <= index.length(); ++j) {
    if (index.kick(j) == -1) c *= outcomes.at(j) * outcomes.at(j - 1);
  }
  return c;
}

Complex log_coherent_overlap(Complex z1, Complex z2) noexcept {
  const double re = -0.5 * std::norm(z1 - z2);
  const double im = z1.real() * z2.imag() - z1.imag() * z2.real();
  return {re, im};
}

Complex coherent_overlap(Complex z1, Complex z2) noexcept {
  const Complex e = log_coherent_overlap(z1, z2);
  if (e.real() < kUnderflowExponent) return {0.0, 0.0};
  return std::polar(std::exp(e.real()), e.imag());
}

Complex number_matrix_element(Complex z1, Complex z2) noexcept {
  return std::conj(z1) * z2 * coherent_overlap(z1, z2);
}

}  // namespace strobo
